"""Evaluate a parsed script and produce one JSON object per command."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from random import Random

from .. import koszulsym
from ..errors import IncompatibleTuple, QpnError
from ..exactlinalg import field_from_spec
from ..grmod import (
    DegreeWindow,
    FPGradedModule,
    GradedFree,
    GradedMatrix,
    GradedModuleMap,
    hilbert_table,
    is_exact_window,
)
from ..polyring import PolyRing, enumerate_monomials, render_monomial
from ..randomized import random_cokernel
from ..tensorfunctor import (
    AlgebraObject,
    AModule,
    FieldTarget,
    FinDimTarget,
    RingMap,
    SectionData,
    TModule,
    UnivariateTarget,
    base_change,
    check_good_epi,
    check_monoidality,
    check_truncation_iso,
    descend_module,
    evaluate_map,
    evaluate_object,
    make_algebra,
    make_amodule,
    reconstruct_morphism,
    regular_module,
    verify_relation,
)
from . import parser as P

PASSING = ("pass", "good", "compatible")


@dataclass
class Report:
    records: list = field(default_factory=list)
    failed: bool = False
    aborted: bool = False

    def lines(self) -> list[str]:
        return [json.dumps(r, ensure_ascii=False) for r in self.records]


def _error(exc: Exception) -> dict:
    if isinstance(exc, QpnError):
        return {"kind": exc.kind, "detail": exc.detail()}
    return {"kind": type(exc).__name__, "detail": {"message": str(exc)}}


class Session:
    def __init__(self, seed: int = 0, window: DegreeWindow | None = None):
        self.env: dict = {}
        self.seed = seed
        self.window = window

    # -- declarations ----------------------------------------------------------------

    def declare(self, st) -> None:
        getattr(self, "_decl_" + type(st).__name__)(st)

    def _decl_FieldDecl(self, st: P.FieldDecl):
        if st.spec == "Q":
            self.env[st.name] = field_from_spec("rationals")
        else:
            self.env[st.name] = field_from_spec("prime-field", int(st.spec[3:-1]))

    def _decl_RingDecl(self, st: P.RingDecl):
        self.env[st.name] = PolyRing(self.env[st.field], st.n)

    def _decl_FreeDecl(self, st: P.FreeDecl):
        self.env[st.name] = (self.env[st.ring], GradedFree(st.twists))

    def _decl_MatrixDecl(self, st: P.MatrixDecl):
        ring, src = self.env[st.source]
        ring2, tgt = self.env[st.target]
        if ring != ring2:
            raise ValueError("source and target live over different rings")
        self.env[st.name] = GradedMatrix.from_rows(ring, src, tgt, [list(r) for r in st.rows])

    def _decl_ModuleDecl(self, st: P.ModuleDecl):
        if st.coker:
            m = self.env[st.ref]
            self.env[st.name] = FPGradedModule(m.ring, m.target, m)
        else:
            ring, free = self.env[st.ref]
            self.env[st.name] = FPGradedModule(ring, free)

    def _decl_MapDecl(self, st: P.MapDecl):
        src, tgt = self.env[st.source], self.env[st.target]
        mat = GradedMatrix.from_rows(src.ring, src.gens, tgt.gens, [list(r) for r in st.rows])
        self.env[st.name] = GradedModuleMap(src, tgt, mat)

    def _decl_TargetDecl(self, st: P.TargetDecl):
        F = self.env[st.field]
        if st.kind == "field":
            self.env[st.name] = FieldTarget(F)
        elif st.kind == "univariate":
            self.env[st.name] = UnivariateTarget(F)
        else:
            self.env[st.name] = FinDimTarget.from_flat(F, st.dim, [F.parse(c) for c in st.constants])

    def _decl_SectionsDecl(self, st: P.SectionsDecl):
        T = self.env[st.target]
        self.env[st.name] = SectionData(T, tuple(T.parse(e) for e in st.elems))

    def _decl_RingMapDecl(self, st: P.RingMapDecl):
        S, T = self.env[st.source], self.env[st.target]
        self.env[st.name] = RingMap(S, T, tuple(T.parse(e) for e in st.images))

    def _decl_TModuleDecl(self, st: P.TModuleDecl):
        T = self.env[st.target]
        if st.rows is None:
            self.env[st.name] = TModule.free(T, st.rank)
            return
        rows = [[T.parse(e) for e in r] for r in st.rows]
        if len({len(r) for r in rows}) > 1:
            raise ValueError("matrix rows have different lengths")
        self.env[st.name] = TModule.from_rows(T, rows)

    def _vec(self, ring, items) -> tuple:
        return tuple(ring.parse(e) for e in items)

    def _decl_AlgebraDecl(self, st: P.AlgebraDecl):
        A = self.env[st.carrier]
        r = A.nrows
        if len(st.mult) != r * r:
            raise ValueError(f"mult needs {r * r} vectors (pairs in row-major order)")
        vecs = [self._vec(A.ring, v) for v in st.mult]
        mult = [[vecs[i * r + j] for j in range(r)] for i in range(r)]
        self.env[st.name] = make_algebra(A, mult, self._vec(A.ring, st.unit))

    def _decl_AModuleDecl(self, st: P.AModuleDecl):
        a: AlgebraObject = self.env[st.algebra]
        if st.underlying is None:
            self.env[st.name] = regular_module(a)
            return
        M = self.env[st.underlying]
        s = M.nrows
        if len(st.action) != a.rank * s:
            raise ValueError(f"action needs {a.rank * s} vectors")
        vecs = [self._vec(M.ring, v) for v in st.action]
        action = [[vecs[i * s + l] for l in range(s)] for i in range(a.rank)]
        self.env[st.name] = make_amodule(a, M, action)

    # -- commands --------------------------------------------------------------------

    def run_command(self, cmd: P.Command) -> dict:
        out = {"command": cmd.verb, "inputs": list(cmd.args)}
        handler = getattr(self, "_cmd_" + cmd.verb.replace("-", "_"))
        out.update(handler(*cmd.args))
        return out

    def _window(self, default: DegreeWindow) -> DegreeWindow:
        return self.window if self.window is not None else default

    def _cmd_monomials(self, n, m):
        return {"value": [render_monomial(p) for p in enumerate_monomials(int(n), int(m))]}

    def _cmd_hilbert(self, x, lo, hi):
        m = self.env[x]
        return {"value": [{"degree": k, "dim": d}
                          for k, d in hilbert_table(m, DegreeWindow(int(lo), int(hi)))]}

    def _as_map(self, name):
        obj = self.env[name]
        if isinstance(obj, GradedMatrix):
            ring = obj.ring
            return GradedModuleMap(FPGradedModule(ring, obj.source),
                                   FPGradedModule(ring, obj.target), obj, check=False)
        return obj

    def _exactness(self, maps, window: DegreeWindow) -> dict:
        rep = is_exact_window(maps, window, require_complex=False)
        out = {"verdict": "pass" if rep.exact else "fail",
               "window": [window.lo, window.hi],
               "table": [c.as_dict() for c in rep.checks]}
        if not rep.exact:
            k, pos = rep.witness
            out["witness"] = {"degree": k, "position": pos}
        return out

    def _cmd_exact(self, *args):
        names = [a for a in args if not a.lstrip("-").isdigit()]
        ints = [int(a) for a in args if a.lstrip("-").isdigit()]
        maps = [self._as_map(n) for n in names]
        window = DegreeWindow(*ints) if ints else self._window(maps[0].target.default_window())
        return self._exactness(maps, window)

    def _cmd_trunc(self, n, a, d, _over, fname):
        n, a, d = int(n), int(a), int(d)
        ring = PolyRing(self.env[fname], n)
        t = koszulsym.truncation_presentation(ring, a, d)
        value = {"generators": len(t.module.gens), "relations": len(t.module.rels.source)}
        out = self._exactness(list(t.free_sequence()), self._window(DegreeWindow(a - 1, a + 6)))
        out["value"] = value
        return out

    def _cmd_phi_extend(self, a, d, y, matrix):
        a, d = int(a), int(d)
        target: FPGradedModule = self.env[y]
        ring = target.ring
        t = koszulsym.truncation_presentation(ring, a, d)
        inner = P.split_top(matrix.strip()[1:-1])
        rows = [P.split_top(r.strip()[1:-1]) for r in inner]
        if len(rows) != len(target.gens) or any(len(r) != len(t.gen_labels) for r in rows):
            raise ValueError(f"need a {len(target.gens)}x{len(t.gen_labels)} matrix of values "
                             "(one column per monomial of H_(a+d))")
        values = {}
        for c, p in enumerate(t.gen_labels):
            values[p] = tuple(ring.parse(rows[i][c], a + target.gens.twists[i])
                              for i in range(len(rows)))
        tup = koszulsym.SectionTuple(a, d, values)
        try:
            phi = koszulsym.phi_extend(t, target, tup)
        except IncompatibleTuple as exc:
            return {"verdict": "incompatible", "witness": exc.detail()}
        return {"verdict": "compatible",
                "value": [[p.render() for p in row] for row in phi.matrix.rows()]}

    def _cmd_sym(self, x, m):
        s = koszulsym.sym_module(self.env[x], int(m))
        return {"value": {"rank": len(s.gens), "twists": list(s.gens.twists),
                          "relations": len(s.rels.source)}}

    def _cmd_good_epi(self, s):
        sd = self.env[s]
        v = check_good_epi(sd)
        out = {"verdict": v.verdict}
        if v.bezout is not None:
            out["certificate"] = {"bezout": [sd.ring.render(x) for x in v.bezout]}
        if not v.epi:
            out["witness"] = v.epi_witness
        elif not v.middle_exact:
            out["witness"] = {"syzygy": [sd.ring.render(x) for x in v.syzygy]}
        return out

    def _cmd_eval(self, s, x):
        sd, obj = self.env[s], self.env[x]
        if isinstance(obj, GradedModuleMap):
            f = evaluate_map(sd, obj)
            return {"value": {"matrix": f.render(), "source": f.source.classify(),
                              "target": f.target.classify()}}
        m = evaluate_object(sd, obj)
        return {"value": {"presentation": m.render(), "classification": m.classify()}}

    def _cmd_trunc_iso(self, s, d, a):
        ok = check_truncation_iso(self.env[s], int(d), int(a))
        return {"verdict": "pass" if ok else "fail"}

    def _cmd_monoidal(self, s, x, y):
        ok = check_monoidality(self.env[s], self.env[x], self.env[y])
        return {"verdict": "pass" if ok else "fail"}

    def _cmd_monoidal_random(self, s, count):
        sd = self.env[s]
        rng = Random(self.seed)
        ring = sd.poly_ring()
        failures = []
        for k in range(int(count)):
            m, n = random_cokernel(rng, ring), random_cokernel(rng, ring)
            if not check_monoidality(sd, m, n):
                failures.append(k)
        out = {"verdict": "fail" if failures else "pass", "value": {"pairs": int(count)}}
        if failures:
            out["witness"] = {"pairs": failures}
        return out

    def _cmd_reconstruct(self, s):
        return {"value": reconstruct_morphism(self.env[s]).as_dict()}

    def _cmd_classify(self, x):
        return {"value": self.env[x].classify()}

    def _cmd_base_change(self, g, x):
        m = base_change(self.env[g], self.env[x])
        return {"value": {"presentation": m.render(), "classification": m.classify()}}

    def _cmd_descend(self, g, a, m, sigma):
        f: RingMap = self.env[g]
        sig = self._vec(f.target, P.split_top(sigma.strip()[1:-1]))
        amod: AModule = self.env[m]
        out = descend_module(f, self.env[a], sig, amod)
        return {"value": {"presentation": out.render(), "classification": out.classify()}}

    def _cmd_relation(self, s, poly):
        sd = self.env[s]
        rel = sd.poly_ring().parse(poly)
        return {"verdict": "pass" if verify_relation(sd, rel) else "fail"}


def run(script: P.SessionScript, seed: int = 0, window: DegreeWindow | None = None) -> Report:
    """Declarations are evaluated in order; a failing declaration stops the run.
    Command errors are reported and the run continues."""
    session = Session(seed, window)
    report = Report()
    for st in script.statements:
        if isinstance(st, P.Command):
            try:
                rec = session.run_command(st)
            except Exception as exc:  # reported, not raised
                rec = {"command": st.verb, "inputs": list(st.args), "error": _error(exc)}
                report.failed = True
            else:
                if "verdict" in rec and rec["verdict"] not in PASSING:
                    report.failed = True
            report.records.append(rec)
        else:
            try:
                session.declare(st)
            except Exception as exc:
                report.records.append({"declaration": st.render(), "line": st.line,
                                       "error": _error(exc)})
                report.aborted = True
                break
    return report
