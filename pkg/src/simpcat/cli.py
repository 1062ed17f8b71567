"""Command-line front end: ``simpcat <command> <inputs> [flags]``.

Inputs are JSON documents (see :mod:`simpcat.io`) or bundled example names.
Every command prints a report and exits with 0 (pass), 1 (fail), 2 (input
error) or 3 (inconclusive: a cap, budget or truncation was hit).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import io
from .coherent import (coherent_nerve, homotopy_category, k_shriek_nerve, point_mapping_space,
                       quasigroupoid_core)
from .enriched.free import (capped_from_fincategory, free_monoid, free_product, free_vcategory)
from .enriched.homotopy import (groupoid_core, is_fibration_truncated, is_weq_truncated, terminal_functor)
from .enriched.pushout import pushout_along_u, pushout_oracle, compare_with_oracle
from .enriched.resolution import comonad_resolution
from .enriched.value import Value
from .enriched.vcat import VCategory, VFunctor, VGraph, discrete_vcategory, graph_tensor, u_category
from .errors import Inconclusive, InputError, SimpcatError
from .fincat import (FinCategory, PresentedCategory, check_localization_universal, fundamental_category,
                     iso_core, localize, nerve)
from .simpset import SSet, is_kan_up_to, is_quasicategory_up_to, pi0

EXIT = {"pass": 0, "fail": 1, "error": 2, "inconclusive": 3}


@dataclass
class Report:
    command: str
    verdict: str = "pass"
    witnesses: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    document: dict | None = None

    def as_dict(self) -> dict:
        out = {"command": self.command, "verdict": self.verdict, "witnesses": self.witnesses,
               "counts": self.counts, "notes": self.notes}
        if self.document is not None:
            out["document"] = self.document
        return out

    def fail(self, witnesses) -> "Report":
        self.verdict = "fail"
        self.witnesses.extend(witnesses)
        if not self.witnesses:
            self.witnesses.append("no witness recorded")
        return self

    def text(self) -> str:
        lines = [f"command: {self.command}", f"verdict: {self.verdict}"]
        for k in sorted(self.counts):
            lines.append(f"count {k}: {json.dumps(self.counts[k], sort_keys=True, ensure_ascii=False)}")
        lines += [f"witness: {w}" for w in self.witnesses]
        lines += [f"note: {n}" for n in self.notes]
        if self.document is not None:
            lines.append(io.dumps(self.document).rstrip("\n"))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# input coercions


def _load(source: str) -> dict:
    return io.load(source)


def _as_fincat(doc: dict, args) -> FinCategory:
    obj = io.parse(doc)
    if isinstance(obj, PresentedCategory):
        obj = obj.to_fincategory(args.len_cap)
    if not isinstance(obj, FinCategory):
        raise InputError(f"input: expected a fincat or presented document, got '{doc.get('kind')}'")
    problems = obj.validate()
    if problems:
        raise InputError("fincat: " + problems[0])
    return obj


def _as_sset(doc: dict, args) -> SSet:
    if doc.get("kind") in ("fincat", "presented"):
        return nerve(_as_fincat(doc, args), args.max_dim if args.max_dim is not None else 3)
    obj = io.parse(doc)
    if not isinstance(obj, SSet):
        raise InputError(f"input: expected an sset document, got '{doc.get('kind')}'")
    problems = obj.validate()
    if problems:
        raise InputError("sset: " + problems[0])
    return obj


def _as_vcat(doc: dict, args) -> VCategory:
    if doc.get("kind") in ("fincat", "presented"):
        return discrete_vcategory(_as_fincat(doc, args))
    obj = io.parse(doc)
    if not isinstance(obj, VCategory):
        raise InputError(f"input: expected a vcat document, got '{doc.get('kind')}'")
    problems = obj.validate()
    if problems:
        raise InputError("vcat: " + problems[0])
    return obj


def _as_vgraph(doc: dict, args) -> VGraph:
    obj = io.parse(doc)
    if isinstance(obj, VCategory):
        obj = obj.graph()
    if not isinstance(obj, VGraph):
        raise InputError(f"input: expected a vgraph document, got '{doc.get('kind')}'")
    return obj


def _as_vfunctor(args) -> VFunctor:
    doc = _load(args.inputs[0])
    if args.terminal:
        return terminal_functor(_as_vcat(doc, args))
    obj = io.parse(doc)
    if not isinstance(obj, VFunctor):
        raise InputError("input: expected a functor between vcat documents (or pass --terminal)")
    problems = obj.validate()
    if problems:
        raise InputError("functor: " + problems[0])
    return obj


def _dim(args, default: int) -> int:
    return default if args.max_dim is None else args.max_dim


def _need(args, k: int, usage: str):
    if len(args.inputs) < k:
        raise InputError(f"inputs: expected {usage}")


def _set_doc_or_value(source: str) -> Value:
    doc = _load(source)
    if doc.get("kind") == "sset":
        return Value.from_sset(io.parse(doc))
    if "elements" in doc:
        return Value.from_set(doc["elements"])
    raise InputError("input: expected an sset document or an object with 'elements'")


def _capped_counts(K) -> dict:
    return {f"{K.objects[a]},{K.objects[b]}": K.count(a, b)
            for a in range(len(K.objects)) for b in range(len(K.objects))}


# ---------------------------------------------------------------------------
# commands


def cmd_nerve(args, r: Report):
    C = _as_fincat(_load(args.inputs[0]), args)
    X = nerve(C, _dim(args, 3))
    r.counts["cells"] = list(X.counts())
    r.document = io.sset_doc(X)


def _horns(args, r: Report, inner: bool):
    X = _as_sset(_load(args.inputs[0]), args)
    d = _dim(args, X.max_dim)
    rep = (is_quasicategory_up_to if inner else is_kan_up_to)(X, d)
    r.counts.update(horns_checked=rep.horns_checked, dimension=rep.dimension, unique_fillers=rep.unique_fillers)
    if not rep.verdict:
        r.fail([f"unfillable horn {rep.first_failure.describe(X)}"])


def cmd_is_kan(args, r):
    _horns(args, r, inner=False)


def cmd_is_qcat(args, r):
    _horns(args, r, inner=True)


def cmd_pi0(args, r):
    X = _as_sset(_load(args.inputs[0]), args)
    comps = pi0(X)
    r.counts["components"] = len(comps)
    r.notes += [", ".join(X.names[0][v] for v in c) for c in comps]


def cmd_tau(args, r):
    X = _as_sset(_load(args.inputs[0]), args)
    P = fundamental_category(X)
    r.document = io.presented_doc(P)
    try:
        C = P.to_fincategory(args.len_cap)
    except Inconclusive as exc:
        r.notes.append(f"no finite table certified: {exc}")
        return
    r.counts["objects"], r.counts["morphisms"] = len(C.objects), len(C.morphisms)
    r.notes.append("finite table: " + json.dumps(io.fincat_doc(C)["homs"], ensure_ascii=False))


def cmd_iso_core(args, r):
    C = iso_core(_as_fincat(_load(args.inputs[0]), args))
    r.counts["morphisms"] = len(C.morphisms)
    r.document = io.fincat_doc(C)


def _free(args, r, groupoid: bool):
    doc = _load(args.inputs[0])
    if doc.get("kind") in ("vgraph", "vcat") and not groupoid:
        K = free_vcategory(_as_vgraph(doc, args), args.len_cap)
        r.counts.update(_capped_counts(K))
        r.notes.append(f"paths of length at most {args.len_cap} (len-cap)")
        return
    P = io.parse(doc)
    if not isinstance(P, PresentedCategory):
        raise InputError("input: expected a presented or vgraph document")
    if groupoid:
        P = PresentedCategory(P.quiver, P.relations, frozenset(range(len(P.quiver.edges))))
    r.document = io.presented_doc(P)
    V = P.quiver.vertices
    for a in range(len(V)):
        for b in range(len(V)):
            r.counts[f"{V[a]},{V[b]}"] = len(P.normal_forms(a, b, args.len_cap))
    r.notes.append(f"normal forms of length at most {args.len_cap} (len-cap)")


def cmd_free_cat(args, r):
    _free(args, r, groupoid=False)


def cmd_free_groupoid(args, r):
    _free(args, r, groupoid=True)


def cmd_free_monoid(args, r):
    if not args.inputs:
        raise InputError("inputs: expected at least one generator letter")
    K = free_monoid(list(args.inputs), args.len_cap)
    r.counts["words"] = K.total()
    r.notes.append(f"words of length at most {args.len_cap} (len-cap)")


def cmd_tensor(args, r):
    _need(args, 2, "two vgraph documents")
    G = graph_tensor(_as_vgraph(_load(args.inputs[0]), args), _as_vgraph(_load(args.inputs[1]), args))
    r.document = io.vgraph_doc(G)
    r.counts.update({f"{G.objects[a]},{G.objects[b]}": G.homs[a, b].size(0) for a, b in sorted(G.homs)})


def cmd_free_product(args, r):
    _need(args, 2, "at least two fincat documents")
    factors = [capped_from_fincategory(_as_fincat(_load(s), args)) for s in args.inputs]
    K = free_product(factors, args.len_cap)
    problems = K.check_laws()
    r.counts.update(_capped_counts(K))
    r.notes.append(f"alternating words of weight at most {args.len_cap} (len-cap)")
    if problems:
        r.fail(problems[:5])


def cmd_u_cat(args, r):
    C = u_category(_set_doc_or_value(args.inputs[0]))
    r.document = io.vcat_doc(C)


def cmd_pushout(args, r):
    doc = _load(args.inputs[0])
    C = _as_vcat(doc, args)
    data = io.attaching_of(doc, C)
    if data is None:
        raise InputError("vcat.attach: the pushout command needs attaching data")
    problems = data.validate()
    if problems:
        raise InputError("vcat.attach: " + problems[0])
    R = pushout_along_u(data, args.word_cap)
    for (w, z), k in sorted(R.counts(0).items()):
        r.counts[f"Map({w},{z})"] = k
    r.counts["stabilized"] = R.stabilized
    if not R.stabilized:
        r.notes.append(f"hom-sets still growing at word-cap {args.word_cap}; counts are lower bounds")
    if args.oracle:
        diff = compare_with_oracle(R, pushout_oracle(data, args.word_cap, budget=args.budget))
        r.counts["oracle_agrees"] = not diff
        if diff:
            r.fail(diff)


def cmd_resolution(args, r):
    C = _as_fincat(_load(args.inputs[0]), args)
    k_max = _dim(args, 2)
    res = comonad_resolution(C, k_max, args.len_cap)
    pairs_left = args.budget
    problems = []
    for lvl in res.levels:
        r.counts[f"level {lvl.k}"] = len(lvl.morphisms)
        by_src = {}
        for y in lvl.morphisms:
            by_src.setdefault(y[0], []).append(y)
        for x in lvl.morphisms:
            problems += res.check(lvl.k, x)
            for y in by_src.get(x[1], []):
                if pairs_left <= 0:
                    break
                pairs_left -= 1
                problems += res.check(lvl.k, x, y)
        for m in range(len(C.morphisms)):
            problems += res.check_section(lvl.k, m)
    if res.levels and res.levels[0].truncated:
        r.notes.append(f"words cut at {args.len_cap} letters (len-cap)")
    if pairs_left <= 0:
        r.notes.append(f"composition checks stopped at budget {args.budget}")
    if problems:
        r.fail(problems[:10])


def cmd_core(args, r):
    G = groupoid_core(_as_vcat(_load(args.inputs[0]), args))
    r.document = io.vcat_doc(G)


def cmd_j_core(args, r):
    X = quasigroupoid_core(_as_sset(_load(args.inputs[0]), args))
    r.counts["cells"] = list(X.counts())
    r.document = io.sset_doc(X)


def cmd_ho(args, r):
    H = homotopy_category(_as_sset(_load(args.inputs[0]), args))
    C = H.category
    r.counts.update(objects=len(C.objects), morphisms=len(C.morphisms))
    r.document = io.fincat_doc(C)


def cmd_coherent_nerve(args, r):
    X = coherent_nerve(_as_vcat(_load(args.inputs[0]), args), _dim(args, 3), args.budget)
    r.counts["cells"] = list(X.counts())
    r.document = io.sset_doc(X)


def cmd_k_shriek(args, r):
    X = k_shriek_nerve(_as_fincat(_load(args.inputs[0]), args), _dim(args, 3), args.budget)
    r.counts["cells"] = list(X.counts())
    r.document = io.sset_doc(X)


def cmd_map_point(args, r):
    X = point_mapping_space(_as_vcat(_load(args.inputs[0]), args), _dim(args, 3), args.budget)
    r.counts["cells"] = list(X.counts())
    r.counts["components"] = len(pi0(X))
    r.document = io.sset_doc(X)


def cmd_localize(args, r):
    _need(args, 2, "a category and at least one morphism name")
    C = _as_fincat(_load(args.inputs[0]), args)
    L = localize(C, args.inputs[1:])
    r.document = io.presented_doc(L.category)
    try:
        T = L.category.to_fincategory(args.len_cap)
    except Inconclusive as exc:
        r.notes.append(f"no finite table certified: {exc}")
        return
    r.counts.update(objects=len(T.objects), morphisms=len(T.morphisms))


def cmd_check_localize(args, r):
    _need(args, 3, "a category, morphism names and a target category")
    C = _as_fincat(_load(args.inputs[0]), args)
    D = _as_fincat(_load(args.inputs[-1]), args)
    rep = check_localization_universal(C, args.inputs[1:-1], D, budget=args.budget)
    r.counts["functors_checked"] = rep.functors_checked
    counts = sorted({c for _, c in rep.factorizations_per_functor})
    r.counts["factorizations"] = counts[0] if len(counts) == 1 else counts
    if not rep.verdict:
        images, k = rep.witness
        r.fail([f"functor with morphism images ({', '.join(D.name(m) for m in images)}) "
                f"has {k} factorizations"])


def _truncated(rep, r: Report):
    r.notes.append(f"checked at the {rep.label} level")
    for k, v in sorted(rep.parts.items()):
        r.counts[k] = v
    if rep.verdict is None:
        r.verdict = "inconclusive"
        r.witnesses.extend(rep.failures)
    elif not rep.verdict:
        r.fail(list(rep.failures))


def cmd_check_weq(args, r):
    _truncated(is_weq_truncated(_as_vfunctor(args)), r)


def cmd_check_fib(args, r):
    _truncated(is_fibration_truncated(_as_vfunctor(args), _dim(args, 2)), r)


def cmd_corpus(args, r):
    _need(args, 1, "'list' or 'emit NAME'")
    if args.inputs[0] == "list":
        r.notes += io.bundled_names()
        r.counts["entries"] = len(r.notes)
    elif args.inputs[0] == "emit":
        _need(args, 2, "'emit NAME'")
        r.document = io.bundled(args.inputs[1])
    else:
        raise InputError(f"corpus: unknown action '{args.inputs[0]}' (use list or emit)")


def cmd_validate(args, r):
    doc = _load(args.inputs[0])
    obj = io.parse(doc)
    problems = list(obj.validate())
    if isinstance(obj, VCategory) and not problems:
        data = io.attaching_of(doc, obj)
        if data is not None:
            problems += data.validate()
    r.counts["kind"] = doc["kind"]
    if problems:
        r.fail(problems)


COMMANDS = {
    "nerve": (cmd_nerve, "nerve of a category"),
    "is-kan": (cmd_is_kan, "every horn up to --max-dim has a filler"),
    "is-qcat": (cmd_is_qcat, "every inner horn up to --max-dim has a filler"),
    "pi0": (cmd_pi0, "connected components of a simplicial set"),
    "tau": (cmd_tau, "fundamental category of a simplicial set"),
    "iso-core": (cmd_iso_core, "maximal subgroupoid of a category"),
    "free-cat": (cmd_free_cat, "free category on a quiver or set-valued graph"),
    "free-groupoid": (cmd_free_groupoid, "free groupoid on a quiver"),
    "free-monoid": (cmd_free_monoid, "free monoid on the given letters"),
    "tensor": (cmd_tensor, "tensor of two graphs over the same objects"),
    "free-product": (cmd_free_product, "free product of categories over the same objects"),
    "u-cat": (cmd_u_cat, "two-object category with the given value as its one hom"),
    "pushout": (cmd_pushout, "word model of a pushout along an attaching map"),
    "resolution": (cmd_resolution, "free/forgetful resolution and its identities"),
    "core": (cmd_core, "groupoid core of an enriched category"),
    "j-core": (cmd_j_core, "quasi-groupoid core of a quasi-category"),
    "ho": (cmd_ho, "homotopy category of a quasi-category"),
    "coherent-nerve": (cmd_coherent_nerve, "coherent nerve of an enriched category"),
    "k-shriek": (cmd_k_shriek, "simplices whose spine edges invert"),
    "map-point": (cmd_map_point, "mapping space out of the point"),
    "localize": (cmd_localize, "presentation of a localization"),
    "check-localize": (cmd_check_localize, "universal property of a localization into a target"),
    "check-weq": (cmd_check_weq, "weak equivalence at the component level"),
    "check-fib": (cmd_check_fib, "fibration at the component level"),
    "corpus": (cmd_corpus, "list or emit bundled examples"),
    "validate": (cmd_validate, "structural checks on a document"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("inputs", nargs="*", help="documents, bundled names or plain arguments")
    common.add_argument("--max-dim", type=int, default=None)
    common.add_argument("--word-cap", type=int, default=3)
    common.add_argument("--len-cap", type=int, default=6)
    common.add_argument("--budget", type=int, default=1_000_000)
    common.add_argument("--out", default=None, help="write the output document here")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--oracle", action="store_true", help="cross-check against the independent oracle")
    common.add_argument("--terminal", action="store_true", help="use the functor to the terminal category")
    parser = argparse.ArgumentParser(prog="simpcat", description="Finite simplicial and enriched category tools")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def run(argv: list[str]) -> tuple[Report, int, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    r = Report(args.command)
    try:
        for flag in ("max_dim", "word_cap", "len_cap", "budget"):
            v = getattr(args, flag)
            if v is not None and v < 0:
                raise InputError(f"--{flag.replace('_', '-')}: must be non-negative")
        if args.command not in ("corpus", "free-monoid"):
            _need(args, 1, "an input document")
        COMMANDS[args.command][0](args, r)
    except InputError as exc:
        r.verdict, r.witnesses, r.document = "error", [str(exc)], None
    except Inconclusive as exc:
        r.verdict, r.document = "inconclusive", None
        r.notes.append(str(exc))
    except SimpcatError as exc:
        r.verdict, r.witnesses, r.document = "error", [str(exc)], None
    if r.document is not None and args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(io.dumps(r.document))
        r.notes.append(f"document written to {args.out}")
        r.document = None
    return r, EXIT[r.verdict], args


def main(argv: list[str] | None = None) -> int:
    r, code, args = run(sys.argv[1:] if argv is None else argv)
    out = io.dumps(r.as_dict()) if args.format == "structured" else r.text()
    try:
        sys.stdout.write(out)
        sys.stdout.flush()
    except BrokenPipeError:
        # reader closed early (e.g. piped into head); keep quiet like other unix tools
        sys.stdout = None
    return code


if __name__ == "__main__":
    sys.exit(main())
