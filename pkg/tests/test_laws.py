import pytest

from gradlogic.laws import LAWS, LawConfig, run_laws


@pytest.mark.parametrize("name", sorted(LAWS))
def test_law_holds(name):
    [result] = run_laws(60, seed=17, cfg=LawConfig(), names=[name])
    assert result.failed == 0, result.examples[:3]


def test_results_are_seed_stable():
    one = run_laws(10, seed=4, cfg=LawConfig(), names=["reduce.confluence"])
    two = run_laws(10, seed=4, cfg=LawConfig(), names=["reduce.confluence"])
    assert one == two
