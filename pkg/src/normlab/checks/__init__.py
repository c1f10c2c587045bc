"""Registry of all verification checks, one list per suite."""

from normlab.checks import (
    core_checks,
    duality_checks,
    dyadic_checks,
    interpolation_checks,
    operators_checks,
    seqspace_checks,
)
from normlab.verify import Check


def build_registry() -> list[Check]:
    checks: list[Check] = []
    checks.extend(core_checks.build())
    checks.extend(duality_checks.build())
    checks.extend(operators_checks.build())
    checks.extend(interpolation_checks.build())
    checks.extend(dyadic_checks.build())
    checks.extend(seqspace_checks.build())
    ids = [c.check_id for c in checks]
    if len(ids) != len(set(ids)):
        raise RuntimeError("duplicate check ids in registry")
    return checks
