from gradlogic.cli import main

main()
