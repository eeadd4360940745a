import pytest

from relief_planner.checker import check, worst_case_shortfall
from relief_planner.checker.oracle import oracle_solve
from relief_planner.errors import SizeGuardError
from relief_planner.fgp import FgpConfig, solve_single
from relief_planner.instance import random_instance

EMBEDDED = FgpConfig(backend="embedded")


def test_branch_and_bound_matches_exhaustive_oracle():
    for seed in range(100):
        inst = random_instance(seed)
        which = seed % 4 + 1
        solution = solve_single(inst, which, EMBEDDED)
        expected = oracle_solve(inst, which)
        assert expected is not None, seed
        assert solution.objectives[which] == pytest.approx(expected, abs=1e-6, rel=1e-6), seed
        assert check(inst, solution).passed, seed


def test_modeled_shortfall_covers_the_worst_case():
    for seed in range(25):
        inst = random_instance(seed)
        for which in (1, 2):
            solution = solve_single(inst, which, EMBEDDED)
            for kind, entities, family in (
                ("commodity", inst.commodities, "dev_commodity"),
                ("injury", inst.injuries, "dev_injury"),
            ):
                for entity in entities:
                    for node in inst.demand_nodes:
                        for t in inst.period_range:
                            modeled = sum(solution.get(family, entity.id, node, s) for s in range(1, t + 1))
                            worst = worst_case_shortfall(inst, solution, (kind, entity.id), node, t)
                            assert worst <= modeled + 1e-6, (seed, which, entity.id, node, t)


def test_oracle_refuses_the_full_example(bundled_instance):
    with pytest.raises(SizeGuardError):
        oracle_solve(bundled_instance, 1)
