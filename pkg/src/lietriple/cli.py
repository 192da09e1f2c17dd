"""Command line entry point: ``lietriple catalog|check|construct|simulate``.

Every command prints a JSON report (sorted keys, no timings unless ``--timings``).
Exit codes: 0 all verdicts pass, 1 a verdict or precondition fails, 2 bad input,
3 two independent computations disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path


from . import catalog, io, linalg
from .algebra import (
    GLieAlgebra,
    Representation,
    adjoint,
    coadjoint,
    complexify,
    is_derivation,
    is_invariant_form,
    jacobi_check,
    killing_form,
    semidirect_sum,
)
from .bialgebra_double import (
    FAMILIES,
    bradouble_check,
    build_double,
    build_extension,
    cocycle_tau,
    exact_sequence,
    family_report,
    manin_checks,
    xi_lambda_forms,
)
from .errors import InputError, InternalConsistencyError, PreconditionError
from .instances import cybea_agreement, cybea_instances
from .laxsim import (
    Observable,
    TripleLieDatum,
    adjoint_triple,
    ansatz_check,
    build_lax_pair,
    conservation_check,
    curvature_tensor,
    integrate,
    postlie_triple,
    quadratic_casimir,
    verify_triple_datum,
)
from .operators import (
    MassProfile,
    OOperatorContext,
    baxter_residual,
    extended_residual,
    mass_axiom_checks,
    nijenhuis_residual,
    o_operator_residual,
    rota_baxter_residual,
)
from .postlie import (
    borel_example,
    diagram_check,
    from_o_operator,
    from_rota_baxter,
    postlie_axioms,
    synthesize_trialgebras,
    trialgebra_axioms,
    trialgebra_to_postlie,
)
from .scalars import parse_scalar, zeros
from .yangbaxter import (
    classify,
    cybe_residual,
    ecybe_residual,
    is_lie_bialgebra,
    symmetric_part_invariant,
    tensor_as_map,
    type2_equivalences,
    type2_residual,
)

CHECK_KINDS = (
    "jacobi", "derivation", "form", "cybe", "ecybe", "type2", "bialgebra", "classify",
    "o-op", "ext-o-op", "rota-baxter", "baxter", "nijenhuis", "postlie", "trialgebra",
    "triple", "ansatz", "curvature",
)
CONSTRUCT_KINDS = ("double", "extension", "family", "postlie", "complexify", "semidirect")
POSTLIE_SOURCES = ("rota-baxter", "o-op", "borel", "trialgebra")

BUILTIN_DATA = {
    "sl2-benchmark": {
        "type": "datum", "kind": "postlie-triple", "algebra": "sl2", "operator": "minus-borel",
        "r": "omega", "lambda": "1", "a0": ["-10", "20", "30"],
    },
    "sl2-zero-flow": {
        "type": "datum", "kind": "adjoint-triple", "algebra": "sl2", "r": "zero",
        "lambda": "0", "a0": ["1", "2", "3"],
    },
}


# ---------------------------------------------------------------- workspace


class Workspace:
    """Directory of ``<name>.json`` records, each tagged with a ``"type"``."""

    def __init__(self, root):
        self.root = Path(root)

    def load(self, name: str):
        p = self.root / f"{name}.json"
        return io.load_json(p) if p.is_file() else None

    def store(self, name: str, record: dict) -> str:
        if not name or "/" in name:
            raise InputError(f"bad workspace name {name!r}")
        self.root.mkdir(parents=True, exist_ok=True)
        (self.root / f"{name}.json").write_text(io.dumps(record) + "\n")
        return name

    def entries(self) -> list:
        if not self.root.is_dir():
            return []
        out = []
        for p in sorted(self.root.glob("*.json")):
            try:
                rec = json.loads(p.read_text())
            except json.JSONDecodeError:
                continue
            out.append({"name": p.stem, "type": rec.get("type", "unknown"), "dim": rec.get("dim")})
        return out


class Resolver:
    """Turns command-line references into objects: catalog first, then workspace, then files."""

    def __init__(self, ws: Workspace):
        self.ws = ws

    def _record(self, ref: str, types):
        rec = self.ws.load(ref)
        if rec is None and Path(ref).is_file():
            rec = io.load_json(ref)
        if rec is None:
            return None
        kind = rec.get("type")
        if kind is None:
            # untagged files: guess from their keys
            kind = "algebra" if "brackets" in rec else "tensor" if "coeffs" in rec else "operator" if "matrix" in rec else None
        if kind not in types:
            raise InputError(f"{ref!r} is a {kind}, expected one of {types}")
        return kind, rec

    def algebra(self, ref: str):
        try:
            return catalog.get_algebra(ref)
        except KeyError:
            pass
        found = self._record(ref, ("algebra", "double"))
        if found is None:
            raise InputError(f"unknown algebra {ref!r}")
        kind, rec = found
        return io.algebra_from_json(rec["algebra"] if kind == "double" else rec)

    def double(self, ref: str):
        found = self._record(ref, ("double",))
        if found is None:
            raise InputError(f"unknown double {ref!r}; run 'construct double' first")
        _, rec = found
        base = io.algebra_from_json(rec["base"])
        return build_double(base, io.matrix_from_json(rec["r"], base.field), rec.get("name"))

    def _inline(self, ref: str):
        if ref.lstrip().startswith("["):
            try:
                return io.matrix_from_json(json.loads(ref))
            except json.JSONDecodeError as exc:
                raise InputError(f"bad inline matrix: {exc}") from None
        return None

    def tensor(self, L, ref: str):
        M = self._inline(ref)
        if M is None:
            try:
                M = catalog.named_tensor(L.name, ref)
            except KeyError:
                found = self._record(ref, ("tensor",))
                if found is None:
                    raise InputError(f"unknown tensor {ref!r} on {L.name}") from None
                M = io.matrix_from_json(found[1]["coeffs"], L.field)
        return _shape(M, (L.dim, L.dim), ref)

    def map(self, L, ref: str, shape=None):
        """A linear map; tensors are accepted and read as maps ``g* -> g``."""
        shape = shape or (L.dim, L.dim)
        M = self._inline(ref)
        if M is None:
            try:
                M = catalog.named_operator(L, ref)
            except (KeyError, ValueError):
                try:
                    M = tensor_as_map(catalog.named_tensor(L.name, ref))
                except KeyError:
                    found = self._record(ref, ("operator", "tensor"))
                    if found is None:
                        raise InputError(f"unknown operator {ref!r} on {L.name}") from None
                    kind, rec = found
                    M = io.matrix_from_json(rec["matrix"] if kind == "operator" else rec["coeffs"], L.field)
                    if kind == "tensor":
                        M = tensor_as_map(M)
        return _shape(M, shape, ref)

    def postlie(self, ref: str):
        found = self._record(ref, ("postlie",))
        if found is None:
            raise InputError(f"unknown PostLie algebra {ref!r}")
        return io.postlie_from_json(found[1])

    def trialgebra(self, ref: str):
        if ref.startswith("synth-"):
            items = synthesize_trialgebras()
            try:
                return items[int(ref[6:])]
            except (ValueError, IndexError):
                raise InputError(f"synthesized trialgebras are synth-0 .. synth-{len(items) - 1}") from None
        found = self._record(ref, ("trialgebra",))
        if found is None:
            raise InputError(f"unknown trialgebra {ref!r}")
        return io.trialgebra_from_json(found[1])

    def datum(self, ref: str):
        rec = BUILTIN_DATA.get(ref)
        if rec is None:
            found = self._record(ref, ("datum",))
            if found is None:
                raise InputError(f"unknown datum {ref!r}")
            rec = found[1]
        return self._build_datum(rec), rec

    def _build_datum(self, rec: dict) -> TripleLieDatum:
        kind = rec.get("kind", "general")
        lam = _frac(rec.get("lambda", "0"))
        if kind == "general":
            try:
                g0 = io.algebra_from_json(rec["g0"])
                k = io.algebra_from_json(rec["k"])
                rho = Representation(g0, io.matrix_from_json(rec["rho"]))
                B = io.matrix_from_json(rec["B"])
                r = self._datum_r(rec["r"], B, k)
                return TripleLieDatum(g0, rho, k, B, r, lam, rec.get("name", "triple"))
            except KeyError as exc:
                raise InputError(f"datum misses {exc}") from None
        L = self.algebra(rec.get("algebra", ""))
        B = io.matrix_from_json(rec["form"]) if "form" in rec else killing_form(L).matrix
        r = self._datum_r(rec.get("r", "zero"), B, L)
        if kind == "adjoint-triple":
            return adjoint_triple(L, r, lam, B)
        if kind == "postlie-triple":
            return postlie_triple(L, self.map(L, rec.get("operator", "minus-borel")), r, lam)
        raise InputError(f"unknown datum kind {kind!r}")

    def _datum_r(self, spec, B, L):
        if spec == "omega":
            if linalg.det(B) == 0:
                raise PreconditionError("r = omega needs a nondegenerate form")
            return linalg.inverse(B).T
        if spec == "zero":
            return zeros((L.dim, L.dim))
        if isinstance(spec, list):
            return _shape(io.matrix_from_json(spec), (L.dim, L.dim), "r")
        return self.tensor(L, spec)

    def observable(self, ref: str, d: TripleLieDatum) -> Observable:
        if ref == "casimir":
            return quadratic_casimir(d)
        found = self._record(ref, ("observable",))
        if found is None:
            raise InputError(f"unknown observable {ref!r}")
        import sympy

        gens = sympy.symbols(f"a0:{d.dim}")
        try:
            expr = sympy.sympify(found[1]["poly"], locals={str(g): g for g in gens})
            poly = sympy.Poly(expr, *gens, domain="QQ")
        except (sympy.SympifyError, sympy.PolynomialError, KeyError) as exc:
            raise InputError(f"bad observable: {exc}") from None
        if poly.total_degree() > 4:
            raise InputError("observables are supported up to degree 4")
        return Observable(poly, found[1].get("name", ref))


def _shape(M, shape, ref):
    if M.shape != tuple(shape):
        raise InputError(f"{ref!r} has shape {M.shape}, expected {tuple(shape)}")
    return M


def _frac(s) -> Fraction:
    try:
        return Fraction(parse_scalar(str(s)))
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"not a rational: {s!r}") from None


def _fracs(s: str, count: int | None = None) -> list:
    parts = [p for p in str(s).split(",") if p.strip()]
    if count is not None and len(parts) != count:
        raise InputError(f"expected {count} comma-separated values, got {s!r}")
    return [_frac(p) for p in parts]


# ---------------------------------------------------------------- reports


class Report:
    def __init__(self, argv):
        self.data = {"command": list(argv), "verdicts": {}, "residuals": {}, "result": {}}

    def residual(self, name: str, res) -> bool:
        summary = io.residual_summary(res)
        self.data["residuals"][name] = summary
        self.data["verdicts"][name] = summary["zero"]
        return summary["zero"]

    def verdict(self, name: str, ok) -> bool:
        self.data["verdicts"][name] = bool(ok)
        return bool(ok)

    def verdict_of(self, name: str, v):
        """Record a ``Verdict`` object (truthiness plus witness)."""
        self.data["verdicts"][name] = bool(v)
        if not v:
            self.data["residuals"][name] = {"zero": False, "witness": None if v.witness is None else list(v.witness)}
        return bool(v)

    @property
    def ok(self) -> bool:
        return all(self.data["verdicts"].values())

    def finish(self) -> dict:
        self.data["ok"] = self.ok
        return self.data


# ---------------------------------------------------------------- check


def _need(args, count, usage):
    if len(args.refs) < count:
        raise InputError(f"usage: {usage}")
    return args.refs


def _masses(args) -> MassProfile:
    if args.mass is None:
        raise InputError("--mass nu,kappa,mu,lambda is required")
    return MassProfile(*_fracs(args.mass, 4))


def _glie(L, context: str) -> GLieAlgebra:
    if context == "adjoint":
        return GLieAlgebra(L, L, adjoint(L))
    if context == "coadjoint":
        from .algebra import abelian

        return GLieAlgebra(L, abelian(L.dim, L.field), coadjoint(L))
    raise InputError(f"unknown context {context!r}")


def cmd_check(args, res: Resolver, rep: Report):
    kind = args.kind
    refs = args.refs
    if kind == "jacobi":
        L = res.algebra(_need(args, 1, "check jacobi ALG")[0])
        rep.residual("jacobi", jacobi_check(L))
    elif kind == "derivation":
        refs = _need(args, 2, "check derivation ALG OP")
        L = res.algebra(refs[0])
        rep.verdict_of("derivation", is_derivation(L, res.map(L, refs[1])))
    elif kind == "form":
        refs = _need(args, 1, "check form ALG [FORM]")
        L = res.algebra(refs[0])
        F = res.map(L, refs[1]) if len(refs) > 1 else killing_form(L).matrix
        rep.residual("symmetric", F - F.T)
        rep.verdict_of("invariant", is_invariant_form(L, F))
        rep.data["result"]["nondegenerate"] = linalg.det(F) != 0
    elif kind in ("cybe", "ecybe", "type2", "bialgebra", "classify"):
        _check_tensor(kind, args, res, rep)
    elif kind in ("o-op", "ext-o-op", "curvature"):
        _check_o_operator(kind, args, res, rep)
    elif kind in ("rota-baxter", "baxter", "nijenhuis"):
        refs = _need(args, 2, f"check {kind} ALG OP")
        L = res.algebra(refs[0])
        R = res.map(L, refs[1])
        if kind == "rota-baxter":
            rep.residual("rota_baxter", rota_baxter_residual(L, R, _frac(args.weight)))
        elif kind == "baxter":
            rep.residual("baxter", baxter_residual(L, R))
        else:
            rep.residual("nijenhuis", nijenhuis_residual(L, R))
    elif kind == "postlie":
        P = res.postlie(_need(args, 1, "check postlie P")[0])
        for name, r in postlie_axioms(P).items():
            rep.residual(name, r)
    elif kind == "trialgebra":
        T = res.trialgebra(_need(args, 1, "check trialgebra T")[0])
        for i, r in enumerate(trialgebra_axioms(T), 1):
            rep.residual(f"axiom_{i}", r)
        if rep.ok:
            for name, v in diagram_check(T).items():
                rep.verdict(f"diagram_{name}", v)
    elif kind in ("triple", "ansatz"):
        d, _ = res.datum(_need(args, 1, f"check {kind} DATUM")[0])
        for name, v in verify_triple_datum(d).items():
            rep.verdict_of(name, v)
        if kind == "ansatz":
            rep.residual("ansatz", ansatz_check(d))
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown check {kind!r}")


def _check_tensor(kind, args, res: Resolver, rep: Report):
    if kind == "ecybe" and len(args.refs) == 1:
        # seeded sweep of the ECYBE / extended O-operator equivalence
        L = res.algebra(args.refs[0])
        count = args.count
        agree = 0
        truths = {}
        for r in cybea_instances(L, count, args.seed):
            for kappa in (-1, 0, 1):
                a = cybea_agreement(L, r, kappa)
                agree += a["agree"]
                truths[str(kappa)] = truths.get(str(kappa), 0) + int(a["ecybe"])
        rep.verdict("agreement", agree == 3 * count)
        rep.data["result"] = {"instances": count, "seed": args.seed, "agreeing": agree, "solutions_per_kappa": truths}
        return
    refs = _need(args, 2, f"check {kind} ALG TENSOR")
    L = res.algebra(refs[0])
    r = res.tensor(L, refs[1])
    if kind == "cybe":
        rep.residual("cybe", cybe_residual(L, r))
    elif kind == "ecybe":
        if args.epsilon is None:
            raise InputError("--epsilon is required (or give only ALG for the seeded sweep)")
        rep.residual("ecybe", ecybe_residual(L, r, _frac(args.epsilon)))
    elif kind == "type2":
        rep.residual("type2", type2_residual(L, r))
        if symmetric_part_invariant(L, r):
            rep.data["result"]["equivalent_forms"] = type2_equivalences(L, r)
    elif kind == "bialgebra":
        rep.verdict_of("lie_bialgebra", is_lie_bialgebra(L, r))
    else:
        c = classify(L, r)
        rep.verdict("lie_bialgebra", c.label != "not-bialgebra")
        rep.data["result"] = {"label": c.label, "factorizable": c.factorizable}


def _check_o_operator(kind, args, res: Resolver, rep: Report):
    if kind == "o-op":
        refs = _need(args, 2, "check o-op ALG MAP --weight W [--context adjoint|coadjoint]")
    else:
        refs = _need(args, 3, f"check {kind} ALG MAP BETA --mass nu,kappa,mu,lambda")
    L = res.algebra(refs[0])
    context = "adjoint" if kind == "curvature" else args.context
    G = _glie(L, context)
    shape = (L.dim, G.k.dim)
    r = res.map(L, refs[1], shape)
    if kind == "o-op":
        ctx = OOperatorContext(G, r, None, MassProfile(lam=_frac(args.weight)))
        rep.residual("o_operator", o_operator_residual(ctx))
        return
    ctx = OOperatorContext(G, r, res.map(L, refs[2], shape), _masses(args))
    for name, v in mass_axiom_checks(ctx).items():
        rep.verdict_of(f"axiom_{name}", v)
    if not rep.ok:
        return
    if kind == "ext-o-op":
        rep.residual("extended", extended_residual(ctx))
        return
    out = curvature_tensor(ctx)
    rep.verdict_of("invariance", out["invariance"])
    rep.verdict_of("covariantly_constant", out["covariantly_constant"])
    rep.data["result"]["nonzero"] = out["nonzero"]


# ---------------------------------------------------------------- construct


def cmd_construct(args, res: Resolver, rep: Report):
    kind = args.kind
    ws = res.ws
    if kind == "double":
        refs = _need(args, 2, "construct double ALG TENSOR [--name N]")
        L = res.algebra(refs[0])
        r = res.tensor(L, refs[1])
        name = args.name or f"double-{L.name}"
        D = build_double(L, r, name)
        for label, v in manin_checks(D).items():
            rep.verdict_of(label, v)
        rep.verdict_of("bradouble", bradouble_check(D))
        alg = io.algebra_to_json(D.algebra)
        ws.store(name, {"type": "double", "name": name, "dim": D.algebra.dim, "base": io.algebra_to_json(L),
                        "r": io.matrix_to_json(r), "algebra": alg, "form": io.matrix_to_json(D.form.matrix)})
        rep.data["result"] = {"stored": name, "dim": D.algebra.dim, "algebra": alg}
    elif kind == "extension":
        D = res.double(_need(args, 1, "construct extension DOUBLE [--sign +1|-1]")[0])
        sign = int(args.sign)
        E = cocycle_tau(D, sign)
        ext = build_extension(E, f"ext{'+' if sign > 0 else '-'}({D.algebra.name})")
        forms = xi_lambda_forms(D, E)
        for key in ("extension_jacobi", "psi_invertible", "structure_constants_equal", "form_is_pullback",
                    "form_invariant", "form_symmetric"):
            rep.verdict(key, forms[key])
        rep.verdict("exact_sequence", exact_sequence(D)["exact"])
        name = args.name or f"ext{'plus' if sign > 0 else 'minus'}-{D.algebra.name}"
        alg = io.algebra_to_json(ext)
        ws.store(name, dict(alg, type="algebra", name=name))
        rep.data["result"] = {"stored": name, "dim": ext.dim, "algebra": alg, "Xi": forms["Xi"],
                              "Lambda": forms["Lambda"], "form": forms["form"]}
    elif kind == "family":
        refs = args.refs
        fam = args.family or (refs[0] if refs else None)
        if fam not in FAMILIES:
            raise InputError(f"family must be one of {FAMILIES}")
        target = args.on or (refs[1] if len(refs) > 1 else None)
        if target is None:
            raise InputError("usage: construct family KIND --params P --on DOUBLE")
        D = res.double(target)
        if args.params is None:
            raise InputError("--params is required")
        rep_f = family_report(D, fam, _fracs(args.params))
        rep.verdict("nijenhuis", rep_f["nijenhuis"])
        rep.verdict("skew_adjoint_matches_criterion", rep_f["skew_adjoint"] == rep_f["criterion_l2_plus_l4_zero"])
        result = {k: v for k, v in rep_f.items() if k not in ("classification", "r_tilde")}
        if "classification" in rep_f:
            tag = f"{fam}-{'_'.join(str(p) for p in _fracs(args.params)).replace('/', 'o')}"
            result["classification"] = {}
            for key, c in rep_f["classification"].items():
                rep.verdict(f"lie_bialgebra_{key}", c.label != "not-bialgebra")
                result["classification"][key] = {"label": c.label, "factorizable": c.factorizable}
                name = ws.store(f"{tag}-{key}-on-{target}", {"type": "tensor", "algebra": target,
                                                            "coeffs": io.matrix_to_json(rep_f["r_tilde"][key])})
                result["classification"][key]["stored"] = name
        rep.data["result"] = result
    elif kind == "postlie":
        _construct_postlie(args, res, rep)
    elif kind == "complexify":
        L = res.algebra(_need(args, 1, "construct complexify ALG")[0])
        C = complexify(L)
        name = args.name or f"{L.name}-complexified"
        rep.residual("jacobi", jacobi_check(C))
        ws.store(name, dict(io.algebra_to_json(C), type="algebra", name=name))
        rep.data["result"] = {"stored": name, "dim": C.dim, "algebra": io.algebra_to_json(C)}
    elif kind == "semidirect":
        L = res.algebra(_need(args, 1, "construct semidirect ALG [--context adjoint|coadjoint]")[0])
        S = semidirect_sum(_glie(L, args.context))
        name = args.name or f"{L.name}-semidirect-{args.context}"
        rep.residual("jacobi", jacobi_check(S))
        ws.store(name, dict(io.algebra_to_json(S), type="algebra", name=name))
        rep.data["result"] = {"stored": name, "dim": S.dim, "algebra": io.algebra_to_json(S)}


def _construct_postlie(args, res: Resolver, rep: Report):
    src = args.source
    if src not in POSTLIE_SOURCES:
        raise InputError(f"--from must be one of {POSTLIE_SOURCES}")
    refs = args.refs
    if src == "borel":
        L = res.algebra(_need(args, 1, "construct postlie --from borel ALG")[0])
        if "roots" not in L.meta:
            raise InputError(f"{L.name} carries no root data")
        ex = borel_example(L)
        rep.residual("rota_baxter", rota_baxter_residual(L, ex["operator"], 1))
        rep.verdict("closed_forms", not ex["mismatches"])
        P = ex["postlie"]
        rep.data["result"]["closed_form_products"] = ex["closed_form"]
        rep.data["result"]["fallback_products"] = ex["fallback"]
        default = f"postlie-borel-{L.name}"
    elif src == "rota-baxter":
        refs = _need(args, 2, "construct postlie --from rota-baxter ALG OP --weight W")
        L = res.algebra(refs[0])
        R = res.map(L, refs[1])
        lam = _frac(args.weight)
        if not rep.residual("rota_baxter", rota_baxter_residual(L, R, lam)):
            raise PreconditionError("operator is not Rota-Baxter of the given weight")
        P = from_rota_baxter(L, R, lam)
        default = f"postlie-rb-{L.name}-{refs[1]}"
    elif src == "o-op":
        refs = _need(args, 2, "construct postlie --from o-op ALG MAP --weight W [--context]")
        L = res.algebra(refs[0])
        G = _glie(L, args.context)
        ctx = OOperatorContext(G, res.map(L, refs[1], (L.dim, G.k.dim)), None, MassProfile(lam=_frac(args.weight)))
        P, hom = from_o_operator(ctx)
        rep.verdict_of("homomorphism", hom)
        default = f"postlie-oop-{L.name}-{refs[1]}"
    else:
        T = res.trialgebra(_need(args, 1, "construct postlie --from trialgebra T")[0])
        for key, v in diagram_check(T).items():
            rep.verdict(f"diagram_{key}", v)
        P = trialgebra_to_postlie(T)
        default = f"postlie-tri-{T.name}"
    for name, r in postlie_axioms(P).items():
        rep.residual(name, r)
    name = args.name or default.replace("/", "o").replace(" ", "")
    table = io.postlie_to_json(P)
    res.ws.store(name, dict(table, type="postlie", name=name))
    rep.data["result"].update({"stored": name, "postlie": table})


# ---------------------------------------------------------------- simulate


def cmd_simulate(args, res: Resolver, rep: Report):
    ref = args.datum or args.input or (args.refs[0] if args.refs else None)
    if ref is None:
        raise InputError("usage: simulate --datum DATUM [--hamiltonian casimir|FILE] --h H --steps N")
    d, rec = res.datum(ref)
    H = res.observable(args.hamiltonian, d)
    pair = build_lax_pair(d, H)
    rep.verdict("lax_identity", True)
    a0 = _fracs(args.a0) if args.a0 else [_frac(x) for x in rec.get("a0", ["1"] * d.dim)]
    if len(a0) != d.dim:
        raise InputError(f"initial state needs {d.dim} entries")
    h = float(args.h)
    steps = int(args.steps)
    if steps < 1:
        raise InputError("--steps must be positive")
    traj = integrate(pair, [float(x) for x in a0], h, steps, record_every=args.record_every)
    drift = conservation_check(pair, traj)
    rep.verdict("conservation", drift["max_rel"] < args.tolerance)
    rep.data["result"] = {"datum": ref, "h": h, "steps": steps, "drift": drift, "final_state": traj.states[-1].tolist()}
    if args.out:
        payload = {
            "times": traj.times.tolist(),
            "states": traj.states.tolist(),
            "L": traj.L_values.tolist(),
            "drift": drift,
        }
        Path(args.out).write_text(json.dumps(payload, sort_keys=True) + "\n")
        rep.data["result"]["trajectory"] = str(args.out)


# ---------------------------------------------------------------- catalog


def cmd_catalog(args, res: Resolver, rep: Report):
    if args.refs:
        L = res.algebra(args.refs[0])
        rep.data["result"] = {"algebra": io.algebra_to_json(L)}
        return
    algebras = {}
    for name in catalog.ALGEBRA_NAMES:
        L = catalog.get_algebra("abelian-2" if name == "abelian-n" else name)
        algebras[name] = {"dim": "n" if name == "abelian-n" else L.dim,
                          "brackets": io.algebra_to_json(L)["brackets"]}
    rep.data["result"] = {
        "algebras": algebras,
        "tensors": {k: list(v) for k, v in catalog.TENSOR_NAMES.items()},
        "operators": list(catalog.OPERATOR_NAMES),
        "data": sorted(BUILTIN_DATA),
        "workspace": res.ws.entries(),
    }


# ---------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workspace", default=".workspace", help="directory of stored JSON objects")
    common.add_argument("--input", help="JSON file used as the first reference")
    common.add_argument("--out", help="write the report (simulate: the trajectory) to this file")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")

    p = argparse.ArgumentParser(prog="lietriple", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", parents=[common], help="list built-in and stored objects")
    c.add_argument("refs", nargs="*")

    k = sub.add_parser("check", parents=[common], help="run an exact identity check")
    k.add_argument("kind", choices=CHECK_KINDS)
    k.add_argument("refs", nargs="*")
    k.add_argument("--weight", default="0")
    k.add_argument("--epsilon")
    k.add_argument("--mass", help="nu,kappa,mu,lambda")
    k.add_argument("--context", default="coadjoint", choices=("adjoint", "coadjoint"))
    k.add_argument("--count", type=int, default=50, help="instances in the ecybe sweep")

    s = sub.add_parser("construct", parents=[common], help="build and store a derived structure")
    s.add_argument("kind", choices=CONSTRUCT_KINDS)
    s.add_argument("refs", nargs="*")
    s.add_argument("--name")
    s.add_argument("--from", dest="source")
    s.add_argument("--family", choices=FAMILIES)
    s.add_argument("--params")
    s.add_argument("--on")
    s.add_argument("--sign", default="-1", choices=("1", "-1", "+1"))
    s.add_argument("--weight", default="1")
    s.add_argument("--context", default="coadjoint", choices=("adjoint", "coadjoint"))

    m = sub.add_parser("simulate", parents=[common], help="integrate a Lax flow with RK4")
    m.add_argument("refs", nargs="*")
    m.add_argument("--datum")
    m.add_argument("--hamiltonian", default="casimir")
    m.add_argument("--h", default="1e-3")
    m.add_argument("--steps", default="10000")
    m.add_argument("--a0", help="comma-separated initial state")
    m.add_argument("--record-every", type=int, default=1)
    m.add_argument("--tolerance", type=float, default=1e-6, help="relative drift accepted as conserved")
    return p


_COMMANDS = {"catalog": cmd_catalog, "check": cmd_check, "construct": cmd_construct, "simulate": cmd_simulate}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        # positionals may follow options (``construct postlie --from borel sl2``)
        args, extra = parser.parse_known_args(argv)
        unknown = [x for x in extra if x.startswith("--")]
        if unknown or not hasattr(args, "refs"):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        args.refs = list(args.refs) + extra
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.input and args.command != "simulate":
        args.refs = [args.input] + list(args.refs)
    rep = Report(argv)
    res = Resolver(Workspace(args.workspace))
    start = time.perf_counter()
    code = 0
    try:
        _COMMANDS[args.command](args, res, rep)
        code = 0 if rep.ok else 1
    except PreconditionError as exc:
        rep.data["error"] = {"type": "precondition", "message": str(exc)}
        code = 1
    except (InputError, KeyError, ValueError) as exc:
        rep.data["error"] = {"type": "input", "message": str(exc)}
        code = 2
    except InternalConsistencyError as exc:
        rep.data["error"] = {"type": "internal-consistency", "message": str(exc)}
        code = 3
    if args.timings:
        rep.data["timings"] = {"total_s": round(time.perf_counter() - start, 6)}
    data = rep.finish()
    if code:
        data["ok"] = False
    text = io.dumps(data)
    if args.out and args.command != "simulate":
        Path(args.out).write_text(text + "\n")
    print(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
