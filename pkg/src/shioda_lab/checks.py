"""Fixed reproduction checks: the order-41 computation for the second family
and the closed forms of the cyclic family."""

from __future__ import annotations

import dataclasses
from typing import Callable

from .family import CYPencil, builtin_pencil, cyclic_pencil
from .groups import (
    DiagAutomorphism,
    GroupError,
    discrete_log,
    element_order,
    gamma_d_generators,
    hom_image,
    image_H_A,
)
from .linalg import IntMatrix, det
from .maps import power_factorization

HAT_G0 = (255, 5, 1005, 80, 705)
HAT_G0_RAW = (1280, 5, -20, 80, -320)
DGJ_B = tuple(25 * x for x in (1, 37, 16, 18, 10))
DGJ_EXPONENT = 185
EXPECTED_LOGS = {"hat_g1": 10, "hat_g2": -13 % 41, "hat_g3": 3}


class CheckFailed(Exception):
    pass


def _fmt(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def dgj_check(pencil: CYPencil | None = None, log: Callable[[str], None] = print) -> bool:
    """Rerun the order-41 chain for the second family.

    `pencil` replaces the built-in family 2; tests pass a tampered copy to
    exercise the failure path.  Returns False at the first mismatch.
    """
    p = pencil if pencil is not None else builtin_pencil(2)

    def expect(label, got, want):
        if got != want:
            log(f"MISMATCH {label}: got {got}, expected {want}")
            raise CheckFailed(label)
        log(f"{label} = {got}")

    try:
        d = p.d
        expect("d", d, 1025)
        expect("B.(5,0,0,0,0)", p.B.apply((5, 0, 0, 0, 0)), HAT_G0_RAW)
        hat = {f"hat_{k}": hom_image(p, g) for k, g in gamma_d_generators(p).items()}
        expect("hat_g0 (canonical)", hat["hat_g0"], DiagAutomorphism(d, HAT_G0))
        log(f"hat_g0 = g_{_fmt(HAT_G0_RAW)} = g_{_fmt(HAT_G0)}")
        H = image_H_A(p)
        expect("H_A", H.structure(), (41,))
        expect("order(ĝ₀)", element_order(H, hat["hat_g0"]), 41)
        for key, want in EXPECTED_LOGS.items():
            expect(f"log_ĝ₀({key})", discrete_log(H, hat["hat_g0"], hat[key]), want)
        expect(
            "b mod 1025",
            tuple(x % d for x in DGJ_B),
            tuple(DGJ_EXPONENT * x % d for x in HAT_G0),
        )
        g_b = DiagAutomorphism(d, DGJ_B)
        expect("ĝ₀^185 == g_b", hat["hat_g0"] ** DGJ_EXPONENT == g_b, True)
        expect("log_ĝ₀(g_b)", discrete_log(H, hat["hat_g0"], g_b), DGJ_EXPONENT % 41)
    except CheckFailed:
        return False
    except GroupError as exc:
        log(f"MISMATCH group computation: {exc}")
        return False
    return True


def tampered_family2() -> CYPencil:
    """Family 2 with one entry of B altered; only useful for failure tests."""
    p = builtin_pencil(2)
    rows = [list(r) for r in p.B.rows]
    rows[0][0] += 1
    return dataclasses.replace(p, B=IntMatrix.from_rows(rows))


def cyclic_closed_forms(n: int) -> dict:
    """Compare det(A), B and the clearing shift with their closed forms."""
    p = cyclic_pencil(n)
    q = [(-1) ** (i - 1) * (n - 1) ** (n - i) for i in range(1, n + 1)]
    B_closed = IntMatrix.from_rows([[q[(k - j) % n] for k in range(n)] for j in range(n)])
    det_closed = (n - 1) ** n - (-1) ** n
    fac = power_factorization(p)
    return {
        "n": n,
        "detA": p.detA,
        "det_closed": det_closed,
        "det_ok": p.detA == det_closed == det(p.A),
        "B_ok": p.B == B_closed and p.d == det_closed,
        "q": q,
        "d": p.d,
        "m": p.m,
        "shift": list(fac.shift) if fac else None,
        "shift_ok": fac is not None and set(fac.shift) == {-q[1]},
    }
