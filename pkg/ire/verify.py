"""The invariant suite behind ``ire verify``.

Checks are grouped into batches that run in a process pool. Each batch
returns ``(passed, elapsed, failures, log_messages)`` and never raises: an
exception inside a check is reported as a failure of that batch.

Without an input the suite covers every scheme on up to ``max_degree``
labels plus seeded random populations for larger alphabets; with an input
it runs every check that applies to the given scheme, IRE or extension.
"""

import math
import os
from concurrent import futures
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice, permutations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ire.config import RunConfig
from ire.extension import (
    NaturalExtension,
    apply_step_extension,
    area,
    invert_step_extension,
    make_extension,
    partner_step,
    run_floating_induction,
)
from ire.gluing import measure, pairing_coverage_ok
from ire.induction import (
    RIGHT_KINDS,
    STEP_KINDS,
    InductionStep,
    applicable_positive_steps,
    applicable_steps,
    apply_step,
    apply_step_lengths,
    apply_step_scheme,
    in_step_image,
    invert_step,
    invert_step_lengths,
    invert_step_scheme,
    turn_holds,
)
from ire.linalg import rank
from ire.logging_config import log_message, log_run_summary
from ire.oracles import classical_rv_step, two_row_crop_step, two_row_endpoints
from ire.realdata import (
    Endpoints,
    coverage_mismatches,
    delta_matrix,
    endpoint_space_basis,
    length_space_basis,
    lengths_from_endpoints,
)
from ire.sampling import (
    default_alphabet,
    random_positive_extension,
    random_scheme,
    random_two_row,
)
from ire.scheme import (
    Scheme,
    TwoRowIET,
    dual,
    from_two_row,
    irreducible_components,
    turns,
    twists_total,
)
from ire.state import is_shutdown_requested
from ire.surface import build_surface, cone_angle_ok, first_return_check, side_coverage_ok
from ire.utils import Timer

EXHAUSTIVE_BATCH = 120
RANDOM_BATCH = 25
INDUCTION_RUN_STEPS = 50
MAX_REPORTED_FAILURES = 5

RANDOM_DEGREES = {
    "schemes": (4, 8),
    "maps": (4, 5),
    "duality": (4, 7),
    "oracle": (2, 4),
    "extension": (2, 6),
    "surface": (2, 5),
}

# Cases per random population when no --random-cases is given
RANDOM_CASES = {
    "schemes": 1000,
    "maps": 200,
    "duality": 10000,
    "oracle": 1000,
    "extension": 100,
    "surface": 100,
}


@dataclass(frozen=True)
class VerifyTask:
    """One batch of checks.

    Attributes:
        name: Shown in progress lines and in the summary
        kind: exhaustive, input, or one of the random populations in ``RANDOM_DEGREES``
        args: Kind-specific arguments, all picklable
    """

    name: str
    kind: str
    args: tuple


def check_scheme_identities(s: Scheme) -> List[str]:
    """Turn balance, twist parity, space dimensions and duality."""
    failures = []
    mirror = dual(s)
    back = len(turns(s).turns_back) + len(turns(mirror).turns_back)
    if back != s.d:
        failures.append(f"{s}: {back} turns back in the scheme and its dual, expected {s.d}")
    twists_total(s)

    P = irreducible_components(s).P
    # Δ has small integer entries, so the floating SVD rank is exact here
    independent = 2 * s.d - int(np.linalg.matrix_rank(np.array(delta_matrix(s).rows, dtype=float)))
    if independent != s.d + P:
        failures.append(f"{s}: kernel of the endpoint relation has dimension {independent}")
    if endpoint_space_basis(s).dim != independent:
        failures.append(f"{s}: exact and independent kernel dimensions differ")
    if length_space_basis(s).dim != s.d + P - len(s.cycle_indices):
        failures.append(f"{s}: length space has the wrong dimension")

    if dual(mirror) != s:
        failures.append(f"{s}: dual is not an involution")
    if irreducible_components(mirror).components != irreducible_components(s).components:
        failures.append(f"{s}: dual has different components")
    return failures


def check_step_identities(s: Scheme) -> List[str]:
    """Invariants of every step on ``s``, inverses and the duality conjugacy."""
    failures = []
    N = len(s.cycle_indices)
    components = irreducible_components(s).components
    total = twists_total(s)
    T, T_dual = turns(s).T, turns(dual(s)).T

    for step in applicable_steps(s):
        s_prime = apply_step_scheme(s, step)
        if len(s_prime.cycle_indices) != N:
            failures.append(f"{step} on {s} changed the number of cycles")
        if irreducible_components(s_prime).components != components:
            failures.append(f"{step} on {s} changed the components")
        if twists_total(s_prime) != total:
            failures.append(f"{step} on {s} changed the twists total")
        gained = turns(s_prime).T - T
        if turns(dual(s_prime)).T - T_dual != -gained:
            failures.append(f"{step} on {s} moved twists without moving them to the dual")
        if not in_step_image(s_prime, step) or invert_step_scheme(s_prime, step) != s:
            failures.append(f"{step} on {s}: inverse does not restore the scheme")
        mirrored = dual(apply_step_scheme(dual(s_prime), partner_step(step)))
        if mirrored != s:
            failures.append(f"{step} on {s}: dual conjugate gives {mirrored}")

    for kind in STEP_KINDS:
        for alpha, beta in permutations(s.alphabet, 2):
            step = InductionStep(kind, alpha, beta)
            if in_step_image(s, step):
                source = invert_step_scheme(s, step)
                if not turn_holds(source, step) or apply_step_scheme(source, step) != s:
                    failures.append(f"inverse {step} on {s} does not round-trip")
    return failures


def _random_point(basis_vectors, coordinates, rng: np.random.Generator) -> Dict:
    coefficients = [int(c) for c in rng.integers(-5, 6, size=len(basis_vectors))]
    return {
        key: sum((c * vector[k] for c, vector in zip(coefficients, basis_vectors)), Fraction(0))
        for k, key in enumerate(coordinates)
    }


def check_real_maps(s: Scheme, rng: np.random.Generator) -> List[str]:
    """Endpoint and length maps of every step are bijections that commute."""
    failures = []
    endpoints = endpoint_space_basis(s)
    lengths = length_space_basis(s)
    for step in applicable_steps(s):
        s_prime = apply_step_scheme(s, step)
        images = [
            [apply_step(s, vector, step)[1][ext] for ext in s_prime.elements()]
            for vector in endpoints.as_dicts()
        ]
        if rank(images) != endpoints.dim:
            failures.append(f"{step} on {s}: endpoint map is not injective")
        length_images = [
            [apply_step_lengths(s, vector, step)[1][label] for label in s.alphabet]
            for vector in lengths.as_dicts()
        ]
        if rank(length_images) != lengths.dim:
            failures.append(f"{step} on {s}: length map is not injective")

        x = _random_point(endpoints.vectors, endpoints.coordinates, rng)
        _, x_prime = apply_step(s, x, step)
        if invert_step(s_prime, x_prime, step) != (s, x):
            failures.append(f"{step} on {s}: endpoints do not round-trip")
        v = lengths_from_endpoints(s, x)
        _, v_prime = apply_step_lengths(s, v, step)
        if lengths_from_endpoints(s_prime, x_prime) != v_prime:
            failures.append(f"{step} on {s}: length and endpoint maps disagree")
        if invert_step_lengths(s_prime, v_prime, step) != (s, v):
            failures.append(f"{step} on {s}: lengths do not round-trip")

        target = endpoint_space_basis(s_prime)
        x_target = _random_point(target.vectors, target.coordinates, rng)
        _, x_back = invert_step(s_prime, x_target, step)
        if apply_step(s, x_back, step) != (s_prime, x_target):
            failures.append(f"{step} on {s}: inverse endpoint map does not round-trip")
    return failures


def check_oracles(t: TwoRowIET, v: Dict[str, Fraction], A: Sequence[Fraction]) -> List[str]:
    """Scheme steps agree with the two-row crops and the classical move."""
    failures = []
    alphabet = t.brackets[0][0]
    s = from_two_row(t, alphabet)
    x = two_row_endpoints(t, v, A)
    for step in applicable_positive_steps(s, v):
        t_prime, v_prime, A_prime = two_row_crop_step(t, v, A, step)
        s_prime, x_prime = apply_step(s, x, step)
        if from_two_row(t_prime, alphabet) != s_prime:
            failures.append(f"{step} on {t}: crop gives {t_prime}, scheme step gives {s_prime}")
        if lengths_from_endpoints(s_prime, x_prime) != v_prime:
            failures.append(f"{step} on {t}: crop and scheme step give different lengths")
        if two_row_endpoints(t_prime, v_prime, A_prime) != x_prime:
            failures.append(f"{step} on {t}: crop and scheme step give different endpoints")
        if step.kind in RIGHT_KINDS and classical_rv_step(t, v) != (t_prime, v_prime):
            failures.append(f"{step} on {t}: classical move disagrees with the crop")
    return failures


def check_extension(e: NaturalExtension, rng: np.random.Generator) -> List[str]:
    """Area and twists stay constant along a random positive induction run."""
    failures = []
    expected_area = area(e)
    total = twists_total(e.scheme)
    for f in run_floating_induction(e.floating(), INDUCTION_RUN_STEPS, rng):
        if area(f) != expected_area:
            failures.append(f"area changed to {area(f)} at {f.scheme}, expected {expected_area}")
            break
        if twists_total(f.scheme) != total:
            failures.append(f"twists total changed at {f.scheme}")
            break
        if any(value <= 0 for value in list(f.v.values()) + list(f.w.values())):
            failures.append(f"positive run produced a non-positive length at {f.scheme}")
            break

    for step in applicable_positive_steps(e.scheme, e.v)[:1]:
        moved = apply_step_extension(e, step)
        if area(moved) != expected_area:
            failures.append(f"{step} on {e.scheme}: extension area changed")
        restored = invert_step_extension(moved, step)
        if (restored.scheme, restored.x, restored.y) != (e.scheme, e.x, e.y):
            failures.append(f"{step} on {e.scheme}: extension does not round-trip")
    return failures


def check_surface(e: NaturalExtension, samples: int) -> List[str]:
    """Tiling, cone angles, genus and first returns of the glued surface."""
    failures = []
    surface = build_surface(e)
    if not side_coverage_ok(surface):
        failures.append(f"{e.scheme}: rectangle sides are not tiled exactly")
    if not cone_angle_ok(surface):
        failures.append(f"{e.scheme}: a cone point has an impossible angle")
    for tree in (surface.horizontal_tree, surface.vertical_tree):
        if not pairing_coverage_ok(tree):
            failures.append(f"{tree.side} tree of {e.scheme}: pairings do not split every interval")
        totals = measure(tree)
        if not totals["beginning"] == totals["ending"] == totals["paired"]:
            failures.append(f"{tree.side} tree of {e.scheme}: measures differ {totals}")
        if coverage_mismatches(tree.scheme, tree.endpoints):
            failures.append(f"{tree.side} side of {e.scheme}: coverage is unbalanced")
    report = first_return_check(surface, samples)
    if not report.ok:
        failures.extend(report.failures[:MAX_REPORTED_FAILURES])
    return failures


def _random_lengths(labels: Sequence[str], rng: np.random.Generator) -> Dict[str, Fraction]:
    return {
        label: Fraction(int(rng.integers(1, 1000)), int(rng.integers(1, 50))) for label in labels
    }


def _exhaustive_batch(d: int, start: int, stop: int, seed) -> Tuple[int, List[str]]:
    rng = np.random.default_rng(seed)
    alphabet = default_alphabet(d)
    failures: List[str] = []
    count = 0
    for images in islice(permutations(range(2 * d)), start, stop):
        s = Scheme(alphabet, images)
        failures += check_scheme_identities(s)
        failures += check_step_identities(s)
        failures += check_real_maps(s, rng)
        count += 1
    return count, failures


def _random_batch(kind: str, count: int, seed, samples: int) -> Tuple[int, List[str]]:
    rng = np.random.default_rng(seed)
    low, high = RANDOM_DEGREES[kind]
    failures: List[str] = []
    for _ in range(count):
        d = int(rng.integers(low, high + 1))
        if kind == "schemes":
            failures += check_scheme_identities(random_scheme(default_alphabet(d), rng))
        elif kind == "maps":
            failures += check_real_maps(random_scheme(default_alphabet(d), rng), rng)
        elif kind == "duality":
            failures += check_step_identities(random_scheme(default_alphabet(d), rng))
        elif kind == "oracle":
            t = random_two_row(default_alphabet(d), rng)
            A = [Fraction(int(rng.integers(-10, 11)))]
            failures += check_oracles(t, _random_lengths(t.brackets[0][0], rng), A)
        elif kind == "extension":
            failures += check_extension(random_positive_extension(d, rng), rng)
        else:
            failures += check_surface(random_positive_extension(d, rng), samples)
    return count, failures


def _input_batch(
    s: Scheme, x: Optional[Endpoints], y: Optional[Endpoints], samples: int, seed
) -> Tuple[int, List[str]]:
    rng = np.random.default_rng(seed)
    failures = check_scheme_identities(s) + check_step_identities(s) + check_real_maps(s, rng)
    checks = 3
    if x is not None:
        checks += 1
        if coverage_mismatches(s, x):
            failures.append(f"{s}: coverage of the IRE is unbalanced")
    if x is not None and y is not None:
        e = make_extension(s, x, y)
        positive = all(value > 0 for value in list(e.v.values()) + list(e.w.values()))
        if positive:
            checks += 2
            failures += check_extension(e, rng)
            failures += check_surface(e, samples)
    return checks, failures


def run_verify_task(
    task: VerifyTask,
) -> Tuple[bool, float, List[str], List[Tuple[str, str]]]:
    """Run one batch of checks.

    Returns:
        tuple: (passed: bool, elapsed: float, failures: list, log_messages: list)
    """
    timer = Timer()
    log_messages: List[Tuple[str, str]] = []
    try:
        if task.kind == "exhaustive":
            count, failures = _exhaustive_batch(*task.args)
        elif task.kind == "input":
            count, failures = _input_batch(*task.args)
        else:
            count, failures = _random_batch(task.kind, *task.args)
        log_messages.append(("DEBUG", f"    {count} cases checked"))
    except Exception as e:
        failures = [f"{type(e).__name__}: {e}"]
    elapsed = timer.stop()
    return not failures, elapsed, failures, log_messages


def build_tasks(config: RunConfig) -> List[VerifyTask]:
    """Exhaustive batches for small alphabets, then the seeded random batches."""
    root = np.random.SeedSequence(config.seed)
    tasks = []
    for d in range(1, config.max_degree + 1):
        total = math.factorial(2 * d)
        for start in range(0, total, EXHAUSTIVE_BATCH):
            stop = min(start + EXHAUSTIVE_BATCH, total)
            tasks.append(
                VerifyTask(
                    f"schemes on {d} labels, {start + 1}-{stop}",
                    "exhaustive",
                    (d, start, stop, root.spawn(1)[0]),
                )
            )
    for kind in RANDOM_DEGREES:
        remaining = RANDOM_CASES[kind] if config.random_cases is None else config.random_cases
        batch = 0
        while remaining > 0:
            count = min(RANDOM_BATCH, remaining)
            batch += 1
            tasks.append(
                VerifyTask(
                    f"random {kind} batch {batch}",
                    kind,
                    (count, root.spawn(1)[0], config.samples),
                )
            )
            remaining -= count
    return tasks


def input_task(
    s: Scheme, x: Optional[Endpoints], y: Optional[Endpoints], config: RunConfig
) -> VerifyTask:
    seed = np.random.SeedSequence(config.seed).spawn(1)[0]
    return VerifyTask(f"input {s}", "input", (s, x, y, config.samples, seed))


def run_verification(
    config: RunConfig, logger=None, tasks: Optional[List[VerifyTask]] = None
) -> Tuple[int, int]:
    """Run verify batches in a process pool and log a summary.

    Returns:
        tuple: (batches completed, batches failed)
    """
    tasks = tasks if tasks is not None else build_tasks(config)
    timer = Timer()
    completed = 0
    failed = 0
    errors = []

    log_message(
        logger,
        "INFO",
        f"Running {len(tasks)} verification batches with {config.workers} workers",
        quiet=config.quiet or config.summary,
        summary=config.summary,
    )

    with futures.ProcessPoolExecutor(max_workers=config.workers) as executor:
        future_to_task = {executor.submit(run_verify_task, task): task for task in tasks}

        tqdm_file = None
        if not (config.quiet or config.summary):
            pbar = tqdm(total=len(tasks), desc="Verifying", unit="batch", leave=False)
        else:
            tqdm_file = open(os.devnull, "w")
            pbar = tqdm(
                total=len(tasks),
                desc="Verifying",
                unit="batch",
                leave=False,
                file=tqdm_file,
                disable=True,
            )

        try:
            for future in futures.as_completed(future_to_task):
                if is_shutdown_requested():
                    log_message(
                        logger,
                        "WARNING",
                        "Shutdown requested. Waiting for current tasks to complete...",
                        quiet=config.quiet,
                        summary=config.summary,
                    )
                    for pending in future_to_task:
                        pending.cancel()
                    break

                task = future_to_task[future]
                completed += 1
                try:
                    passed, elapsed, failures, log_messages = future.result()
                    pbar.clear()
                    log_message(
                        logger,
                        "INFO",
                        f"[{completed}/{len(tasks)}] {task.name}",
                        quiet=config.quiet or config.summary,
                        summary=config.summary,
                    )
                    for level, message in log_messages:
                        log_message(
                            logger,
                            level,
                            message,
                            quiet=config.quiet or config.summary,
                            summary=config.summary,
                        )
                    if passed:
                        log_message(
                            logger,
                            "INFO",
                            f"  ✓ Passed in {elapsed:.2f} seconds",
                            quiet=config.quiet or config.summary,
                            summary=config.summary,
                        )
                    else:
                        failed += 1
                        shown = failures[:MAX_REPORTED_FAILURES]
                        errors.append((task.name, "\n  ".join(shown)))
                        log_message(
                            logger,
                            "ERROR",
                            f"  ✗ Failed: {shown[0]}",
                            quiet=config.quiet,
                            summary=config.summary,
                        )
                except Exception as e:
                    failed += 1
                    error_msg = f"Error running {task.name}: {str(e)}"
                    log_message(
                        logger, "ERROR", error_msg, quiet=config.quiet, summary=config.summary
                    )
                    errors.append((task.name, error_msg))
                pbar.update(1)
        finally:
            pbar.close()
            if tqdm_file:
                tqdm_file.close()

    log_run_summary(
        logger,
        "Verification",
        completed,
        failed,
        timer.stop(),
        errors,
        quiet=config.quiet,
        summary=config.summary,
    )
    return completed, failed
