"""Analysis reports: everything computed for one matrix, as a plain document.

Scalars that grow with d (determinants, orders, c_A) are written as decimal
strings; matrices and vectors stay JSON integer arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .family import CYPencil, format_factorization, validate
from .groups import (
    DiagGroup,
    factorization_groups,
    gamma_d,
    gamma_d_generators,
    image_generators,
    image_H_A,
    kernel_gamma_A,
)
from .invariants import pullback_form_data, verify_form_uniqueness, verify_quotient_generators
from .linalg import IntMatrix
from .maps import (
    F_A_t,
    F_dI_t,
    format_poly,
    power_factorization,
    verify_composition,
    verify_mirror_equations,
    verify_shioda_pullback,
)

FLAG_NAMES = (
    "shioda_pullback",
    "mirror_equations",
    "composition",
    "order_identity",
    "invariant_form_uniqueness",
    "quotient_generators",
)


def group_document(G: DiagGroup, named=None) -> dict:
    if named is None:
        gens = [
            {"name": f"c{i + 1}", "vector": list(g.vector), "order": k}
            for i, (g, k) in enumerate(G.generators())
        ]
    else:
        gens = [{"name": name, "vector": list(g.vector)} for name, g in named.items()]
    return {
        "name": G.name,
        "modulus": G.modulus,
        "invariant_factors": list(G.structure()),
        "order": str(G.order()),
        "generators": gens,
    }


@dataclass(frozen=True)
class AnalysisReport:
    pencil: CYPencil
    groups: dict
    flags: dict
    form: dict
    factorization: dict | None

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    def to_dict(self) -> dict:
        p = self.pencil
        return {
            "matrix": {"n": p.n, "rows": p.A.tolist()},
            "n": p.n,
            "e": p.e,
            "detA": str(p.detA),
            "d": str(p.d),
            "d_factored": format_factorization(p.d),
            "m": str(p.m),
            "B": p.B.tolist(),
            "detB": str(p.detB),
            "F_A_t": format_poly(F_A_t(p), "x"),
            "F_dI_t": format_poly(F_dI_t(p), "y"),
            "groups": self.groups,
            "flags": dict(self.flags),
            "form": self.form,
            "factorization": self.factorization,
            "assumptions": ["irreducibility of X_{A,t} is assumed, not checked"],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        p = self.pencil
        out = [
            f"matrix A ({p.name or 'input'}):",
            _indent(str(p.A)),
            f"n = {p.n}, e = {p.e}, det(A) = {p.detA}, d = {format_factorization(p.d)}, m = {p.m}",
            "B = d A^-1:",
            _indent(str(p.B)),
            f"F_A,t  = {format_poly(F_A_t(p), 'x')}",
            f"F_dI,t = {format_poly(F_dI_t(p), 'y')}",
            "groups:",
        ]
        for key, g in self.groups.items():
            factors = " x ".join(f"Z/{f}" for f in g["invariant_factors"]) or "trivial"
            out.append(f"  {key}: {factors}  (order {g['order']})")
            for gen in g["generators"]:
                vec = "g_(" + ",".join(map(str, gen["vector"])) + ")"
                suffix = f", order {gen['order']}" if "order" in gen else ""
                out.append(f"    {gen['name']} = {vec}{suffix}")
        out.append(f"form: l = {self.form['l']}, c_A = {self.form['c_A']}")
        if self.factorization:
            f = self.factorization
            out.append(
                f"factorization through u = y^{f['power']}: shift {f['shift']}, "
                f"inner row 1 {f['inner'][0]}"
            )
        else:
            out.append("factorization through u = y^n: none")
        out.append("flags:")
        for k, v in self.flags.items():
            out.append(f"  {k}: {'ok' if v else 'FAILED'}")
        return "\n".join(out) + "\n"


def _indent(s: str, pad: str = "  ") -> str:
    return "\n".join(pad + line for line in s.splitlines())


def order_identity(p: CYPencil) -> bool:
    G, K, H = gamma_d(p), kernel_gamma_A(p), image_H_A(p)
    ok = G.order() == K.order() * H.order()
    if power_factorization(p) is not None:
        mu, gp = factorization_groups(p)
        ok = ok and K.order() == mu.order() * gp.order()
    return ok


def analyze(A, name: str = "") -> AnalysisReport:
    """Validate a balanced matrix and run every computation on it."""
    p = A if isinstance(A, CYPencil) else validate(A, require_balanced=True, name=name)
    groups = {
        "Gamma_d": group_document(gamma_d(p), gamma_d_generators(p)),
        "Gamma_A": group_document(kernel_gamma_A(p)),
        "H_A": group_document(image_H_A(p), image_generators(p)),
    }
    fac = power_factorization(p)
    fac_doc = None
    if fac is not None:
        mu, gp = factorization_groups(p)
        groups["mu_A"] = group_document(mu)
        groups["Gamma_prime_A"] = group_document(gp)
        fac_doc = {
            "power": fac.power,
            "shift": list(fac.shift),
            "uniform_shift": fac.uniform_shift,
            "cleared": fac.cleared.exponents.tolist(),
            "inner": fac.inner.exponents.tolist(),
        }
    form = pullback_form_data(p)
    flags = {
        "shioda_pullback": verify_shioda_pullback(p),
        "mirror_equations": verify_mirror_equations(p),
        "composition": verify_composition(p),
        "order_identity": order_identity(p),
        "invariant_form_uniqueness": verify_form_uniqueness(p) and form.integral,
        "quotient_generators": verify_quotient_generators(p),
    }
    form_doc = {"l": str(form.l), "c_A": str(form.c_A), "c_A_integral": form.integral}
    return AnalysisReport(p, groups, flags, form_doc, fac_doc)


def matrix_from_report(doc: dict) -> IntMatrix:
    return IntMatrix.from_rows(doc["matrix"]["rows"])
