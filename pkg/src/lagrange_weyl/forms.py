"""Parametrized matrix forms of operator algebras, computed exactly.

A form such as [[a,b],[b,a]] is the reduced row echelon basis of
span{U_x : x in S} over Q(zeta): parameter p multiplies the basis matrix
whose pivot (in row-major order) is p's position.  Entries print as sums of
``coef*param`` with coef written e(k/N) = exp(2 pi i k/N).
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Sequence

from .canonical import CovariantSpace
from .cyclotomic import Cyclotomic
from .exact import ExactMatrix, rref
from .groups import GroupElement, Subgroup
from .torus import TorusExponent
from .weyl import ProjectiveRep

LinearForm = dict[str, Cyclotomic]


def _param_names(n: int) -> list[str]:
    letters = string.ascii_lowercase
    return [letters[i] if i < 26 else f"p{i}" for i in range(n)]


def format_coefficient(c: Cyclotomic) -> str:
    if c == 1:
        return ""
    if c == -1:
        return "-"
    t = c.as_root_of_unity()
    if t is not None:
        return f"{t}*"
    return f"{c}*"


def format_linear(form: LinearForm, order: Sequence[str]) -> str:
    terms = [format_coefficient(form[p]) + p for p in order if p in form and not form[p].is_zero()]
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


@dataclass
class AlgebraForm:
    dim: int
    params: list[str]
    entries: list[list[LinearForm]]
    basis: list[ExactMatrix]  # basis[p] = coefficient matrix of params[p]
    u_coordinates: list[dict[GroupElement, Cyclotomic]]  # basis[p] = sum c_x U_x

    def render(self) -> str:
        return "[" + ",".join("[" + ",".join(format_linear(e, self.params) for e in row) + "]"
                              for row in self.entries) + "]"

    def rows(self) -> list[list[str]]:
        return [[format_linear(e, self.params) for e in row] for row in self.entries]


def _vec(M: ExactMatrix) -> list[Cyclotomic]:
    n, m = M.shape
    return [M[i, j] for i in range(n) for j in range(m)]


def form_from_basis(mats: Sequence[ExactMatrix], labels: Sequence[GroupElement] | None = None) -> AlgebraForm:
    dim = mats[0].shape[0]
    reduced, pivots, T = rref([_vec(M) for M in mats])
    params = _param_names(len(reduced))
    entries: list[list[LinearForm]] = [[{} for _ in range(dim)] for _ in range(dim)]
    basis = []
    for p, row in zip(params, reduced):
        basis.append(ExactMatrix((dim, dim), {divmod(k, dim): v for k, v in enumerate(row)}))
        for k, v in enumerate(row):
            if not v.is_zero():
                i, j = divmod(k, dim)
                entries[i][j][p] = v
    coords = []
    for trow in T:
        coords.append({(labels[i] if labels else (i,)): c for i, c in enumerate(trow) if not c.is_zero()})
    return AlgebraForm(dim, params, entries, basis, coords)


def algebra_form(rep: ProjectiveRep, S: Subgroup) -> AlgebraForm:
    """The form of span{U_x : x in S} (the commutant of S^sigma)."""
    mats = [ExactMatrix.from_unitary(rep[x]) for x in S.elements]
    return form_from_basis(mats, list(S.elements))


_TERM = re.compile(r"^\s*(?P<sign>[-+]?)\s*(?:e\((?P<num>-?\d+)/(?P<den>\d+)\)\s*\*?\s*)?(?P<param>[a-z]\w*)\s*$")


def parse_entry(text: str) -> LinearForm:
    """Parse "0", "a", "-b", "e(2/3)*c", "a+e(1/3)*b" into a linear form."""
    text = text.replace(" ", "")
    if text in ("0", ""):
        return {}
    parts = re.findall(r"[-+]?[^-+]+", text.replace("(-", "(~"))
    form: LinearForm = {}
    for part in parts:
        m = _TERM.match(part.replace("~", "-"))
        if not m:
            raise ValueError(f"cannot parse term {part!r} in {text!r}")
        c = Cyclotomic.rational(1)
        if m["num"] is not None:
            c = Cyclotomic.from_torus(TorusExponent(int(m["num"]), int(m["den"])))
        if m["sign"] == "-":
            c = -c
        p = m["param"]
        form[p] = form[p] + c if p in form else c
    return {p: c for p, c in form.items() if not c.is_zero()}


def parse_form(rows: Sequence[Sequence[str]]) -> list[list[LinearForm]]:
    return [[parse_entry(e) for e in row] for row in rows]


def forms_equal(a: Sequence[Sequence[LinearForm]], b: Sequence[Sequence[LinearForm]]) -> bool:
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for ea, eb in zip(ra, rb):
            if set(ea) != set(eb) or any(ea[p] != eb[p] for p in ea):
                return False
    return True


def parameter_matrices(entries: Sequence[Sequence[LinearForm]]) -> dict[str, ExactMatrix]:
    dim = len(entries)
    params = sorted({p for row in entries for e in row for p in e})
    return {p: ExactMatrix((dim, dim), {(i, j): e[p] for i, row in enumerate(entries)
                                        for j, e in enumerate(row) if p in e})
            for p in params}


def span_rank(mats: Sequence[ExactMatrix]) -> int:
    if not mats:
        return 0
    return len(rref([_vec(M) for M in mats])[0])


def compare_printed(form: AlgebraForm, printed_rows: Sequence[Sequence[str]]) -> dict:
    """Exact comparison of a computed form with a printed one.

    Reports structural equality, whether the printed parameter matrices
    span the same subspace, and which printed parameters fall outside it.
    """
    printed = parse_form(printed_rows)
    pmats = parameter_matrices(printed)
    r_form = len(form.basis)
    outside = [p for p, M in pmats.items() if span_rank(list(form.basis) + [M]) > r_form]
    same = _same_span(form, printed)
    repairs = []
    if not same:
        params = sorted(pmats)
        for i, row in enumerate(printed):
            for j, entry in enumerate(row):
                for p in list(entry):
                    for q in params:
                        if q == p or q in entry:
                            continue
                        trial = [[dict(e) for e in r] for r in printed]
                        trial[i][j][q] = trial[i][j].pop(p)
                        if _same_span(form, trial):
                            repairs.append({"row": i, "col": j, "printed": p, "repaired": q})
    return {
        "computed": form.render(),
        "printed": "[" + ",".join("[" + ",".join(r) + "]" for r in printed_rows) + "]",
        "identical": forms_equal(form.entries, printed),
        "same_span": same,
        "printed_rank": span_rank(list(pmats.values())),
        "params_outside_algebra": outside,
        "single_substitution_repairs": repairs,
    }


def _same_span(form: AlgebraForm, entries: Sequence[Sequence[LinearForm]]) -> bool:
    mats = list(parameter_matrices(entries).values())
    r = len(form.basis)
    return span_rank(mats) == r and span_rank(list(form.basis) + mats) == r


def spectrum_forms(form: AlgebraForm, space: CovariantSpace) -> list[tuple[GroupElement, LinearForm]]:
    """Characters of the algebra as linear forms in the parameters, labeled by cosets.

    Uses the exact transform U_h -> (1/alpha(h)) sigma(t + H, h) on each
    coordinate of the form's basis; requires the form to be over S = H.
    """
    xi = space.ps.xi
    diag = {}
    for coords in form.u_coordinates:
        for h in coords:
            if h not in diag:
                U = space.diagonal_h_action(xi.index(h))
                diag[h] = [Cyclotomic.root(int(p), U.modulus) for p in U.phases]
    out = []
    for c, t in enumerate(space.quotient.coset_reps):
        lin: LinearForm = {}
        for p, coords in zip(form.params, form.u_coordinates):
            val = Cyclotomic.zero()
            for h, coef in coords.items():
                val = val + coef * diag[h][c]
            if not val.is_zero():
                lin[p] = val
        out.append((t, lin))
    return out
