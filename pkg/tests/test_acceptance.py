"""End-to-end acceptance criteria 1-9, one pass/fail line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import pytest

from sigquiver.acceptance import CRITERIA, Workbench

TITLES = {
    1: "bump curvatures close at length 48 with symmetry indices 6, 6, 3, 2",
    2: "bump signatures coincide",
    3: "traced words and quiver weights of the bump curves",
    4: "bump curves pairwise non-congruent, congruent to moved copies",
    5: "synthesized bump words: closed curves with their indices, one open curve",
    6: "Musso-Nicolodi quiver, its 5 words and their curves",
    7: "cogwheel quiver, rearranged cogs, closure test",
    8: "simple signature circle and the congruence shortcut",
    9: "property suite",
}


def summarize(k, checks):
    passed = sum(c.passed for c in checks)
    verdict = "PASS" if passed == len(checks) else "FAIL"
    line = f"criterion {k}: {verdict} ({passed}/{len(checks)} checks) {TITLES[k]}"
    failed = [f"    FAIL {c.name} [{c.detail}]" for c in checks if not c.passed]
    return line, failed


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(wb, k):
    from tests.conftest import ACCEPTANCE_LINES

    checks = CRITERIA[k - 1](wb)
    line, failed = summarize(k, checks)
    ACCEPTANCE_LINES[k] = line
    print(line)
    assert not failed, "\n".join(failed)


if __name__ == "__main__":
    bench = Workbench()
    ok = True
    for k, fn in enumerate(CRITERIA, 1):
        line, failed = summarize(k, fn(bench))
        print(line, *failed, sep="\n")
        ok = ok and not failed
    raise SystemExit(0 if ok else 1)
