"""The verification/audit report behind ``spinforge verify``.

Entries carry one of four statuses:

* ``pass`` / ``fail`` -- checks on this package's own machinery;
* ``finding`` -- an exactly evidenced discrepancy in the source equations;
* ``info`` -- values recorded for reference.

Findings never fail a run.  Output is deterministic for a fixed seed.
"""

from __future__ import annotations

import json
import functools
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import assembly, coupling, entanglement, orbital, spin
from .radical import ONE, SQRT3, ZERO, QuadraticScalar, inv_sqrt, try_sqrt
from .stateio import pretty_spin

DEFAULT_SEED = 42


@dataclass
class Entry:
    section: str
    name: str
    status: str
    value: str

    def render(self) -> str:
        tag = {"pass": "PASS", "fail": "FAIL", "finding": "FIND", "info": "INFO"}[self.status]
        return f"{tag}  {self.name} = {self.value}"


@dataclass
class AnalysisReport:
    seed: int
    entries: list[Entry] = field(default_factory=list)
    _section: str = ""

    def section(self, name: str) -> None:
        self._section = name

    def add(self, name: str, status: str, value) -> None:
        self.entries.append(Entry(self._section, name, status, str(value)))

    def check(self, name: str, ok: bool, value="") -> bool:
        self.add(name, "pass" if ok else "fail", value if value != "" else ("ok" if ok else "mismatch"))
        return ok

    @property
    def failures(self) -> list[Entry]:
        return [e for e in self.entries if e.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def render_text(self) -> str:
        lines = [
            "# spinforge verification report",
            f"# seed = {self.seed}",
            "# entanglement criterion: Schmidt rank > 1 across at least one bipartition "
            "(an operational choice; the source defines no quantitative measure)",
        ]
        current = None
        for e in self.entries:
            if e.section != current:
                current = e.section
                lines.append("")
                lines.append(f"[{current}]")
            lines.append(e.render())
        counts = {s: sum(e.status == s for e in self.entries) for s in ("pass", "fail", "finding", "info")}
        lines.append("")
        lines.append(
            f"# summary: {counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['finding']} findings, {counts['info']} info"
        )
        return "\n".join(lines) + "\n"

    def render_json(self) -> str:
        payload = {
            "seed": self.seed,
            "ok": self.ok,
            "entries": [asdict(e) for e in self.entries],
        }
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def fmt_float(x: float) -> str:
    return f"{x:.9g}"


def _matrix_text(rows) -> str:
    return "[" + "; ".join(" ".join(v.pretty() for v in row) for row in rows) + "]"


# -- literal amplitudes as printed in the source, for exact comparison ------


def _lit(terms: dict[str, QuadraticScalar]) -> spin.SpinState:
    return spin.SpinState.from_terms(terms)


def printed_literals() -> dict[str, spin.SpinState]:
    """Amplitudes typed in from the source, keyed by equation label.

    The M=1/2 quadruplet member follows its lowering derivation, not the
    misprinted expansion.
    """
    r2, r3, r6 = inv_sqrt(2), inv_sqrt(3), inv_sqrt(6)
    return {
        "Eq. (7)": _lit({"uu": ONE}),
        "Eq. (8)": _lit({"ud": r2, "du": r2}),
        "Eq. (9)": _lit({"dd": ONE}),
        "Eq. (10)": _lit({"ud": r2, "du": -r2}),
        "Eq. (17)": _lit({"uuu": ONE}),
        "Eq. (18)": _lit({"duu": r3, "udu": r3, "uud": r3}),
        "Eq. (23)": _lit({"ddu": r3, "dud": r3, "udd": r3}),
        "Eq. (24)": _lit({"ddd": ONE}),
        "Eq. (27)": _lit({"uud": 2 * r6, "udu": -r6, "duu": -r6}),
        "Eq. (30)": _lit({"udd": r6, "dud": r6, "ddu": -2 * r6}),
        "Eq. (32)": _lit({"udu": r2, "duu": -r2}),
        "Eq. (34)": _lit({"udd": r2, "dud": -r2}),
    }


def constructed_spin_states() -> dict[str, spin.SpinState]:
    """The twelve reconstructed states keyed by the equation they reproduce."""
    two = coupling.two_electron_basis()
    three = coupling.three_electron_basis()
    keys2 = ["Eq. (7)", "Eq. (8)", "Eq. (9)", "Eq. (10)"]
    keys3 = ["Eq. (17)", "Eq. (18)", "Eq. (23)", "Eq. (24)", "Eq. (27)", "Eq. (30)", "Eq. (32)", "Eq. (34)"]
    out = {k: s.state for k, s in zip(keys2, two)}
    out.update({k: s.state for k, s in zip(keys3, three)})
    return out


def constructed_space_states() -> dict[str, orbital.SpaceState]:
    return {
        "Eq. (36) (n,n,n)": orbital.symmetric_space(("n", "n", "n")),
        "Eq. (37) (n,m,l)": orbital.symmetric_space(("n", "m", "l")),
        "Eq. (38) (n,n,l)": orbital.symmetric_space(("n", "n", "l")),
        "Eq. (39) (n,m,l)": orbital.slater_determinant(("n", "m", "l")),
    }


def constructed_total_states() -> dict[str, assembly.TotalState]:
    half = Fraction(1, 2)
    out = {
        "Eq. (40) M=+1/2": assembly.assemble("a", ("n", "n", "n"), half),
        "Eq. (40) M=-1/2": assembly.assemble("a", ("n", "n", "n"), -half),
        "Eq. (41) M=+1/2": assembly.assemble("b", ("n", "m", "l"), half),
        "Eq. (41) M=-1/2": assembly.assemble("b", ("n", "m", "l"), -half),
        "Eq. (42) chi(3)=u": assembly.assemble("c", ("n", "n", "l"), "u"),
        "Eq. (42) chi(3)=d": assembly.assemble("c", ("n", "n", "l"), "d"),
    }
    for m in ("3/2", "1/2", "-1/2", "-3/2"):
        out[f"Eq. (43) M={m}"] = assembly.assemble("d", ("n", "m", "l"), m)
    return out


def random_scalar(rng: random.Random) -> QuadraticScalar:
    return QuadraticScalar(rng.randint(-3, 3), rng.randint(-2, 2), rng.randint(-2, 2), 0, rng.randint(1, 3))


def random_product_states(seed: int, count: int = 20, n: int = 3):
    """Spin states built as explicit outer products across a random cut."""
    rng = random.Random(seed)
    cuts = entanglement.all_cuts(n)
    out = []
    while len(out) < count:
        cut = rng.choice(cuts)
        left = [random_scalar(rng) for _ in range(1 << len(cut.left))]
        right = [random_scalar(rng) for _ in range(1 << len(cut.right))]
        if not any(left) or not any(right):
            continue
        amps = [ZERO] * (1 << n)
        for idx in range(1 << n):
            pat = spin.pattern_of(idx, n)
            li = spin.index_of("".join(pat[i - 1] for i in cut.left))
            ri = spin.index_of("".join(pat[i - 1] for i in cut.right))
            amps[idx] = left[li] * right[ri]
        out.append((spin.SpinState(n, tuple(amps)), cut))
    return out


# -- sections ------------------------------------------------------------------


def _radical_section(rep: AnalysisReport, rng: random.Random) -> None:
    rep.section("radical-field")
    bad = 0
    for _ in range(200):
        x, y, z = random_scalar(rng), random_scalar(rng), random_scalar(rng)
        if (x + y) + z != x + (y + z) or x * (y + z) != x * y + x * z or x * y != y * x:
            bad += 1
        if x and x * (ONE / x) != ONE:
            bad += 1
    rep.check("field_axioms_random_200", bad == 0, f"{bad} violations")
    rep.check("sqrt3", try_sqrt(QuadraticScalar(3)) == SQRT3, "sqrt(3) = sqrt3")
    rep.check("sqrt4", try_sqrt(QuadraticScalar(4)) == QuadraticScalar(2), "sqrt(4) = 2")
    rep.check("inv_sqrt3_canonical", inv_sqrt(3).fields == (0, 0, 1, 0, 3), inv_sqrt(3).format())


def _spin_states_section(rep: AnalysisReport) -> None:
    rep.section("spin-states")
    built = constructed_spin_states()
    for key, literal in printed_literals().items():
        rep.check(f"{key} exact", built[key] == literal, pretty_spin(built[key]))
    two = [s.state for s in coupling.two_electron_basis()]
    gram2 = [[spin.inner(a, b) for b in two] for a in two]
    rep.check("gram_2e_identity", gram2 == [[ONE if i == j else ZERO for j in range(4)] for i in range(4)])

    rep.section("quantum-numbers")
    for ls in coupling.two_electron_basis() + coupling.three_electron_basis():
        for chk in coupling.verify_quantum_numbers(ls):
            rep.check(f"{ls.label} {chk.name}", chk.passed, str(chk.expected))

    rep.section("ladder")
    quad = coupling.quadruplet()
    expected = [coupling.ladder_coefficient(Fraction(3, 2), m) for m in (Fraction(3, 2), Fraction(1, 2), Fraction(-1, 2))]
    for k, (got, want) in enumerate(zip(quad.ladder_factors, expected)):
        m = Fraction(3, 2) - k
        rep.check(f"lower_factor_M={m}", got == want, got.pretty())
    states = [s.state for s in quad.states]
    for k in range(3):
        lowered = spin.apply_ladder("lower", (1, 2, 3), states[k])
        rep.check(f"ladder_exact_M={Fraction(3, 2) - k}", lowered == states[k + 1].scale(expected[k]))


def _basis_section(rep: AnalysisReport) -> None:
    rep.section("basis")
    eight = [s.state for s in coupling.three_electron_basis()]
    gram = [[spin.inner(a, b) for b in eight] for a in eight]
    identity = [[ONE if i == j else ZERO for j in range(8)] for i in range(8)]
    rep.check("gram_matrix_8x8_identity", gram == identity, _matrix_text(gram))
    resolution = [[sum((s.amps[i] * s.amps[j] for s in eight), ZERO) for j in range(8)] for i in range(8)]
    rep.check("resolution_of_identity", resolution == identity)


def _permutation_section(rep: AnalysisReport, rng: random.Random) -> None:
    rep.section("permutations")
    quad = [s.state for s in coupling.quadruplet().states]
    perms = spin.Permutation.all(3)
    fixed = all(spin.permute(pi, q) == q for q in quad for pi in perms)
    rep.check("quadruplet_fixed_by_all_6_permutations", fixed)
    basis_states = [spin.basis(spin.pattern_of(i, 3)) for i in range(8)]
    for kind, want in (("symmetrizer", 4), ("antisymmetrizer", 0)):
        images = [spin.projector(kind, b) for b in basis_states]
        idempotent = all(spin.projector(kind, im) == im for im in images)
        rank = entanglement.exact_rank([im.amps for im in images])
        rep.check(f"{kind}_idempotent", idempotent)
        name = "symmetric_subspace_dim" if kind == "symmetrizer" else "antisymmetric_subspace_dim"
        rep.check(name, rank == want, rank)
    for ls in coupling.doublets_sprime1() + coupling.doublets_sprime0():
        table = coupling.parity_table(ls.state)
        rep.add(f"{ls.label} parity", "info", _parity_text(table))
    # commutation on random states
    ok = True
    for _ in range(5):
        x = spin.SpinState(3, tuple(random_scalar(rng) for _ in range(8)))
        s2 = lambda v: spin.s_squared((1, 2, 3), v)  # noqa: E731
        sz = lambda v: spin.apply_sz((1, 2, 3), v)  # noqa: E731
        s12 = lambda v: spin.s_squared((1, 2), v)  # noqa: E731
        ok &= s2(sz(x)) == sz(s2(x)) and s2(s12(x)) == s12(s2(x))
    rep.check("csco_commutation_random_5", ok)


def _parity_text(table: dict[str, int | None]) -> str:
    return " ".join(f"{k}:{'not_eigenstate' if v is None else f'{v:+d}'}" for k, v in table.items())


def _audit_section(rep: AnalysisReport) -> None:
    rep.section("audit")
    built = coupling.quadruplet().states[1].state
    literal20 = coupling.literal_eq20()
    rep.add(
        "eq20_printed_is_sz_eigenstate",
        "finding" if not coupling.is_sz_eigenstate(literal20) else "info",
        f"{coupling.is_sz_eigenstate(literal20)} (printed {pretty_spin(literal20)}; "
        f"Eq. (18) lowering gives {pretty_spin(built)})",
    )
    rep.add("eq25_duplicates_eq26", "info", "Eq. (25) repeats Eq. (26) verbatim")

    for rec in coupling.literal_symmetrized_variants():
        tag = rec.equation.replace("Eq. (", "eq").replace(")", "")
        rep.add(f"{tag}_sum_norm2", "finding" if rec.norm2 != ONE else "info", rec.norm2.pretty())
        rep.add(f"{tag}_sum_state", "info", pretty_spin(rec.result))
        if not rec.is_zero:
            rep.add(f"{tag}_sum_parity", "finding", _parity_text(rec.parity) + f" -> {rec.verdict()}")
        if rec.alternating is not None:
            rep.add(f"{tag}_alternating_sum_norm2", "info", rec.alternating_norm2.pretty())
            rep.add(
                f"{tag}_alternating_sum_parity",
                "info",
                _parity_text(rec.alternating_parity) + f" -> {rec.verdict(rec.alternating_parity)}",
            )

    lit38 = orbital.eq38_literal("n", "m", "l")
    cor38 = orbital.symmetric_space(("n", "n", "l"))
    rep.add("eq38_printed_terms", "finding", " + ".join(f"({','.join(t)})" for t in lit38.terms))
    rep.add("eq38_read_as", "info", " + ".join(f"({','.join(t)})" for t in cor38.terms))
    sym38 = all(orbital.space_permute(pi, lit38) == lit38 for pi in spin.transpositions(3))
    rep.add("eq38_printed_is_symmetric", "finding" if not sym38 else "info", sym38)

    totals = constructed_total_states()
    for key, state in totals.items():
        report = assembly.pauli_parity_report(state)
        tag = key.replace("Eq. (", "eq").replace(") ", "_").replace(" ", "_")
        if key.startswith(("Eq. (40)", "Eq. (41)")):
            status = "finding" if report.verdict != "fully_antisymmetric" else "info"
            rep.add(f"{tag}_parity", status, report.describe())
        else:
            rep.check(f"{tag}_fully_antisymmetric", report.verdict == "fully_antisymmetric", report.describe())
        rep.add(f"{tag}_norm2", "info", state.norm2().pretty())

    literal42 = assembly.assemble("c", ("n", "n", "l"), "u", pairs=assembly.ASCENDING_PAIRS)
    rep.add(
        "eq42_ascending_pair_order_parity",
        "finding",
        assembly.pauli_parity_report(literal42).describe()
        + " (singlet on (1,3) oriented 1->3; the cyclic orientation (3,1) is antisymmetric)",
    )
    rep.add(
        "eq40_note",
        "info",
        "no totally antisymmetric state of three spin-1/2 particles exists, so symmetric space x spin cannot satisfy Pauli",
    )


def _orbital_section(rep: AnalysisReport) -> None:
    rep.section("orbital-space")
    spaces = constructed_space_states()
    for key, st in spaces.items():
        rep.check(f"{key} norm2", orbital.space_inner(st, st) == ONE, orbital.space_inner(st, st).pretty())
        want = -1 if key.startswith("Eq. (39)") else 1
        ok = all(orbital.space_permute(pi, st) == st.scale(want) for pi in spin.transpositions(3))
        rep.check(f"{key} exchange_sign_{want:+d}", ok)
    rep.check(
        "slater_repeated_orbitals_vanish",
        orbital.slater_determinant(("n", "n", "l")).is_zero(),
        "pauli_excluded",
    )
    prod = orbital.SpaceState.product(("n", "m", "l"))
    avg = orbital.space_symmetrizer(prod)
    rescaled = avg.scale(ONE / try_sqrt(orbital.space_inner(avg, avg)))
    rep.check("eq37_equals_group_average", rescaled == spaces["Eq. (37) (n,m,l)"])
    rep.check("sym_perp_antisym", orbital.space_inner(spaces["Eq. (37) (n,m,l)"], spaces["Eq. (39) (n,m,l)"]) == ZERO)


def _entanglement_section(rep: AnalysisReport, seed: int) -> None:
    rep.section("entanglement")
    chi00 = coupling.two_electron_basis()[3].state
    q12 = coupling.quadruplet().states[1].state
    cut12 = entanglement.Bipartition((1,), (2,))
    cut1 = entanglement.Bipartition((1,), (2, 3))
    e00 = entanglement.entropy_bits(chi00, cut12)
    eq = entanglement.entropy_bits(q12, cut1)
    rep.check("entropy_chi00_bits", abs(e00 - 1.0) <= 1e-9, fmt_float(e00))
    want = math.log2(3) - 2 / 3
    rep.check("entropy_quadruplet_M1/2_cut1|23_bits", abs(eq - want) <= 1e-9, fmt_float(eq))
    rho = entanglement.reduced_density(q12, cut1)
    rep.add("rho_quadruplet_M1/2_cut1|23", "info", _matrix_text(rho.entries))

    disagreements = 0
    entropy_mismatch = 0
    checked = 0
    suites = list(constructed_spin_states().values())
    suites += list(constructed_space_states().values())
    suites += list(constructed_total_states().values())
    for st in suites:
        if (isinstance(st, orbital.SpaceState) and st.is_zero()):
            continue
        n = st.n if isinstance(st, spin.SpinState) else st.n_particles
        for cut in entanglement.all_cuts(n):
            rank = entanglement.schmidt_rank(st, cut)
            oracle = entanglement.product_oracle(st, cut).is_product
            disagreements += (rank == 1) != oracle
            if entanglement.state_norm2(st) == ONE:
                s = entanglement.entropy_bits(st, cut)
                entropy_mismatch += (s <= 1e-9) != (rank == 1)
            checked += 1
    rep.check("rank_vs_oracle_constructed", disagreements == 0, f"{disagreements} disagreements in {checked} cuts")
    rep.check("entropy_zero_iff_rank1", entropy_mismatch == 0, f"{entropy_mismatch} mismatches")

    bad = 0
    for st, cut in random_product_states(seed):
        bad += entanglement.schmidt_rank(st, cut) != 1
        bad += not entanglement.product_oracle(st, cut).is_product
    rep.check("random_product_states_20", bad == 0, f"{bad} disagreements (seed {seed})")

    rep.section("classification")
    for key, st in constructed_total_states().items():
        c = entanglement.classify(st)
        rep.add(key, "info", json.dumps(c.as_dict(), sort_keys=False))
    examples = {
        "none": assembly.combine(orbital.symmetric_space(("n", "n", "n")), spin.basis("uuu")),
        "space_only": assembly.combine(orbital.symmetric_space(("n", "m", "l")), spin.basis("uuu")),
        "spin_only": assembly.spin_as_total(spin.tensor(chi00, spin.basis("u"))),
        "full": assembly.combine(orbital.slater_determinant(("n", "m", "l")), q12),
        "full_nonfactorable": assembly.assemble("c", ("n", "n", "l"), "u"),
    }
    for verdict, st in examples.items():
        got = entanglement.classify(st).verdict
        rep.check(f"classify_example_{verdict}", got == verdict, got)
    rep.add(
        "one_bit_note",
        "info",
        "every single-particle cut of three spin-1/2 particles carries at most 1 bit; "
        "the cited experiments report entanglement limited to one bit",
    )


@functools.lru_cache(maxsize=4)
def _scan(sigma: float, dmax: float, steps: int) -> tuple[orbital.ScanRow, ...]:
    # seed-independent, so repeated reports reuse it
    distances = [dmax * k / (steps - 1) for k in range(steps)]
    return tuple(orbital.separation_scan(orbital.gaussian_family(sigma, dmax), distances))


def _decay_section(rep: AnalysisReport, sigma: float = 1.0, dmax: float = 12.0, steps: int = 13) -> None:
    rep.section("decay")
    rows = _scan(sigma, dmax, steps)
    err = max(abs(r.overlap - math.exp(-r.d**2 / (4 * sigma**2))) for r in rows)
    rep.check("overlap_vs_closed_form_max_err_below_1e-6", err <= 1e-6, f"{err:.1e}")
    last = rows[-1]
    rep.check(f"overlap_at_d={fmt_float(last.d)}_below_1e-8", last.overlap < 1e-8, f"{last.overlap:.3e}")
    rep.check(f"p_same_at_d={fmt_float(last.d)}_below_1e-6", last.symmetric.p_same < 1e-6, f"{last.symmetric.p_same:.3e}")
    sums = max(abs(sum(s * s for s in r.symmetric.singular_values) - 1) for r in rows)
    rep.check("schmidt_squares_sum_to_1", sums <= 1e-6, f"max deviation {sums:.1e}")
    first = next((r.d for r in rows if r.overlap < 1e-8), None)
    rep.add("first_scanned_d_overlap_below_1e-8", "info", "none" if first is None else fmt_float(first))
    rep.add("analytic_d_overlap_equals_1e-8", "info", fmt_float(orbital.overlap_threshold(sigma)))
    anti_ranks = sorted({sum(s > 1e-6 for s in r.antisymmetric.singular_values) for r in rows if not r.antisymmetric.vanishes})
    rep.add("antisymmetric_branch_schmidt_ranks", "info", anti_ranks)


def build_report(seed: int = DEFAULT_SEED) -> AnalysisReport:
    rep = AnalysisReport(seed)
    rng = random.Random(seed)
    _radical_section(rep, rng)
    _spin_states_section(rep)
    _basis_section(rep)
    _permutation_section(rep, rng)
    _audit_section(rep)
    _orbital_section(rep)
    _entanglement_section(rep, seed)
    _decay_section(rep)
    return rep


__all__ = [
    "AnalysisReport",
    "Entry",
    "build_report",
    "printed_literals",
    "constructed_spin_states",
    "constructed_space_states",
    "constructed_total_states",
    "random_product_states",
    "random_scalar",
    "DEFAULT_SEED",
    "fmt_float",
]
