"""Acceptance criteria 1-12, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line (also
repeated in the terminal summary) and then asserts.  Criteria 4 and 5 fail
on purpose: the gadgets are built as described and the suites expose where
they break.
"""

import time

from kayles.suites import SUITES, kernel_sizes, run_suite

RESULTS: dict[int, str] = {}


def report(capsys, number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[number] = line
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def suite_cases(name: str, prefix: str = ""):
    t0 = time.perf_counter()
    cases = [check() for case, check in SUITES[name](0) if case.startswith(prefix)]
    failed = [c for c in cases if not c.ok]
    ran = [c for c in cases if not c.skipped]
    return cases, ran, failed, time.perf_counter() - t0


def summary(ran, failed) -> str:
    text = f"{len(ran) - len(failed)}/{len(ran)} cases"
    if failed:
        text += f"; first failure {failed[0].name}: {failed[0].detail}"
    return text


def test_criterion_01_path_periodicity(capsys):
    t0 = time.perf_counter()
    res = run_suite("sequences", case="path-grundy-120")
    el = time.perf_counter() - t0
    case = res.cases[0]
    report(capsys, 1, case.ok and el < 60, f"{case.detail} (limit 60s)")


def test_criterion_02_cram_grids(capsys):
    t0 = time.perf_counter()
    cases = [run_suite("sequences", case=f"cram-{g}").cases[0]
             for g in ("2x2", "2x4", "4x4", "2x3", "2x5")]
    el = time.perf_counter() - t0
    failed = [c for c in cases if not c.ok]
    report(capsys, 2, not failed and el < 120,
           f"{summary(cases, failed)}; {el:.1f}s (limit 120s)")


def test_criterion_03_nk_to_csg(capsys):
    _, ran, failed, el = suite_cases("reductions-nk")
    report(capsys, 3, not failed and el < 600, f"{summary(ran, failed)}; {el:.1f}s (limit 600s)")


def test_criterion_04_ndnk_gadget(capsys):
    cases, ran, failed, _ = suite_cases("reductions-ndnk")
    skipped = len(cases) - len(ran)
    report(capsys, 4, not failed, f"{summary(ran, failed)}; {skipped} skipped (no edge)")


def test_criterion_05_avoid_true_split(capsys):
    _, ran, failed, _ = suite_cases("reductions-split")
    report(capsys, 5, not failed, summary(ran, failed))


def test_criterion_06_kernel_safety(capsys):
    _, ran, failed, el = suite_cases("kernel-rules", prefix="random-")
    report(capsys, 6, len(ran) == 200 and not failed, f"{summary(ran, failed)}; {el:.1f}s")


def test_criterion_07_kernel_boundedness(capsys):
    sizes = kernel_sizes()
    report(capsys, 7, len(set(sizes.values())) == 1, f"n -> kernel size {sizes}")


def test_criterion_08_strategy_freeness(capsys):
    _, ran_t, failed_t, _ = suite_cases("trees")
    _, ran_c, failed_c, _ = suite_cases("clique-trees")
    ok = not failed_t and not failed_c
    report(capsys, 8, ok, f"trees {summary(ran_t, failed_t)}; clique trees {summary(ran_c, failed_c)}")


def test_criterion_09_threshold(capsys):
    _, ran, failed, _ = suite_cases("threshold")
    report(capsys, 9, bool(ran) and not failed, summary(ran, failed))


def test_criterion_10_symmetry(capsys):
    cases, ran, failed, _ = suite_cases("symmetry")
    cycles = next(c for c in cases if c.name == "cycles")
    report(capsys, 10, cycles.ok and not failed,
           f"{cycles.detail}; {summary(ran, failed)} with an involution")


def test_criterion_11_gi_gadget(capsys):
    _, ran, failed, _ = suite_cases("gi")
    report(capsys, 11, not failed, summary(ran, failed))


def test_criterion_12_csg1_parity(capsys):
    _, ran, failed, _ = suite_cases("sequences", prefix="csg1-")
    report(capsys, 12, len(ran) == 100 and not failed, summary(ran, failed))
