"""Plain-data reports and their text rendering.

Every ``*_report`` function returns a JSON-compatible dict; ``render_text``
produces the human-readable form from that dict alone, so a report read back
from JSON renders to the same text.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .classify import Classification, coset_structure
from .core import Automaton, serialize_automaton, word_to_affine
from .frequency import EmpiricalCounts, FrequencyReport, RootInfo
from .kernel import KernelGraph, minimal_relations, monoid_closure
from .rational import RationalFunction


def q(value) -> str:
    """Exact rational as a ``"num/den"`` string (``"n"`` for integers)."""
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def cnum(value) -> str:
    """Exact rationals as fractions, other numbers as complex with 15 digits."""
    if isinstance(value, (int, Fraction)):
        return q(value)
    z = complex(value) + 0j
    z = complex(z.real + 0.0, z.imag + 0.0)  # drop negative zeros
    if abs(z.imag) < 1e-300:
        return f"{z.real:.15g}"
    return f"{z.real:.15g}{z.imag:+.15g}i"


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)


# -- builders --------------------------------------------------------------------


def automaton_report(aut: Automaton) -> dict:
    return {"kind": "automaton", "text": serialize_automaton(aut)}


def eval_report(aut: Automaton, first: int, last: int) -> dict:
    from .core import prefix_labels

    labels = prefix_labels(aut, last)
    return {"kind": "eval", "terms": [[n, aut.alphabet[labels[n - 1]]] for n in range(first, last + 1)]}


def _word(w) -> str | None:
    return None if w is None else "".join(map(str, w))


def kernel_report(graph: KernelGraph) -> dict:
    monoid = monoid_closure(graph)
    rels = minimal_relations(graph, graph.base)
    return {
        "kind": "kernel",
        "p": graph.p,
        "base": graph.base,
        "vertices": [
            {"index": u, "states": graph.vertex_name(u),
             "first_terms": [graph.first_term(u, s) for s in range(1, graph.p)]}
            for u in graph.vertices
        ],
        "gen": [list(g) for g in graph.gen],
        "monoid_order": monoid.order,
        "is_group": monoid.is_group,
        "base_relations": [
            None if w is None else {"type": r, "word": _word(w), "relation": _pair(w, graph.p)}
            for r, w in enumerate(rels)
        ],
    }


def _pair(w, p):
    c = word_to_affine(w, p)
    return [c.i, c.j]


def classification_report(cl: Classification, graph: KernelGraph) -> dict:
    out = {
        "kind": "classification",
        "flags": cl.flags(),
        "r1_flags": list(cl.r1_flags),
        "kernel_size": cl.kernel_size,
        "monoid_order": cl.monoid_order,
        "witnesses": cl.witnesses,
    }
    if cl.self_similar and cl.is_cayley:
        cs = coset_structure(graph)
        if cs is not None:
            out["cosets"] = {
                "K_order": len(cs.K),
                "K_generators": [str(g) for g in cs.generators],
                "core_trivial": cs.core_trivial,
                "base_letter": cs.base_letter,
                "letters": [cs.letter_bijection[k] for k in sorted(cs.letter_bijection)]
                if cs.letter_bijection else None,
            }
    return out


def fraction_report(L: RationalFunction, vertex: int) -> dict:
    return {"kind": "fraction", "vertex": vertex, "fraction": L.to_json()}


def _root_row(r: RootInfo, p: int) -> dict:
    return {
        "value": cnum(r.value),
        "exact": r.exact,
        "modulus": cnum(r.value.__abs__()) if r.exact else f"{r.modulus:.15g}",
        "multiplicity": r.multiplicity,
        "position": {-1: "inside", 0: "on", 1: "outside"}[r.position],
        "residue": None if r.residue is None else cnum(r.residue),
    }


def frequency_json(report: FrequencyReport, empirical: list[EmpiricalCounts] = ()) -> dict:
    out = {
        "kind": "frequency",
        "p": report.p,
        "denominator": report.analysis.denominator.format(),
        "hypotheses": report.hypotheses,
        "failure": report.failure,
        "roots": [_root_row(r, report.p) for r in report.analysis.roots],
        "letters": [],
    }
    for v in report.letters:
        row = {"letter": v.letter, "verdict": v.kind}
        if v.limit is not None:
            row["limit"] = q(v.limit)
        if v.even is not None:
            row["even"] = q(v.even)
            row["odd"] = q(v.odd)
            row["even_odd_mean"] = q(v.even_odd_mean)
        row["terms"] = [[cnum(c), f"{th:.15g}"] for c, th in v.terms]
        out["letters"].append(row)
    if empirical:
        rows = []
        for ec in empirical:
            for v in report.letters:
                pred = v.predicted(ec.n)
                emp = ec.ratio(v.letter)
                rows.append({
                    "n": ec.n, "letter": v.letter,
                    "count_below": ec.below[v.letter], "count_upto": ec.upto[v.letter],
                    "ratio": f"{float(emp):.6f}",
                    "predicted": q(pred) if isinstance(pred, Fraction) else f"{pred:.6f}",
                    "error": f"{abs(float(emp) - float(pred)):.6f}",
                })
        out["empirical"] = rows
    return out


# -- text ------------------------------------------------------------------------


def _yes(b) -> str:
    return "yes" if b else "no"


def render_text(rep: dict) -> str:
    kind = rep["kind"]
    if kind == "automaton":
        return rep["text"].rstrip("\n")
    if kind == "eval":
        return "\n".join(f"a_{n} = {t}" for n, t in rep["terms"])
    if kind == "kernel":
        lines = [f"N(a): {len(rep['vertices'])} sequences (p = {rep['p']}, base vertex {rep['base']})"]
        for v in rep["vertices"]:
            moves = " ".join(f"t{i}->{g[v['index']]}" for i, g in enumerate(rep["gen"]))
            lines.append(f"  [{v['index']}] states {v['states']}: first terms "
                         f"{','.join(v['first_terms'])}; {moves}")
        lines.append(f"G(a): order {rep['monoid_order']}, group: {_yes(rep['is_group'])}")
        for r, rel in enumerate(rep["base_relations"]):
            if rel is None:
                lines.append(f"  type {r}: no relation")
            else:
                i, j = rel["relation"]
                lines.append(f"  type {r}: ({i},{j}) word {rel['word']}")
        return "\n".join(lines)
    if kind == "classification":
        f = rep["flags"]
        lines = [
            f"kernel size: {rep['kernel_size']}",
            f"monoid order: {rep['monoid_order']}",
            f"global relations of all types: {_yes(f['r1'])} "
            f"(per type: {' '.join(_yes(x) for x in rep['r1_flags'])})",
            f"group: {_yes(f['is_group'])}",
            f"cayley: {_yes(f['is_cayley'])}",
            f"homogeneous: {_yes(f['homogeneous'])}",
            f"self-similar: {_yes(f['self_similar'])}",
            f"reproduces: {_yes(f['reproduces'])}",
        ]
        w = rep["witnesses"]
        for key in sorted(w):
            lines.append(f"  {key}: {json.dumps(w[key], sort_keys=True)}")
        if "cosets" in rep:
            c = rep["cosets"]
            gens = " ".join(c["K_generators"]) or "()"
            lines.append(f"K: order {c['K_order']} generated by {gens}; "
                         f"core trivial: {_yes(c['core_trivial'])}")
            if c["letters"]:
                lines.append(f"letters by coset: {' '.join(c['letters'])}")
        return "\n".join(lines)
    if kind == "fraction":
        rf = RationalFunction.from_json(rep["fraction"])
        return f"L = {rf.format()}"
    if kind == "frequency":
        lines = [f"D = {rep['denominator']}"]
        for r in rep["roots"]:
            res = "" if r["residue"] is None else f", residue {r['residue']}"
            lines.append(f"  root {r['value']} (|.| = {r['modulus']}, multiplicity "
                         f"{r['multiplicity']}, {r['position']} |x| = 1/{rep['p']}{res})")
        h = rep["hypotheses"]
        lines.append(f"no roots inside: {_yes(h['no_roots_inside'])}; circle roots simple: "
                     f"{_yes(h['circle_roots_simple'])}; single root 1/p: {_yes(h['corollary'])}")
        if rep["failure"]:
            lines.append(f"no asymptotics: {rep['failure']}")
        for v in rep["letters"]:
            if v["verdict"] == "limit":
                lines.append(f"  {v['letter']}: limit {v['limit']}")
            elif v["verdict"] == "even/odd":
                lines.append(f"  {v['letter']}: no limit; even n -> {v['even']}, odd n -> "
                             f"{v['odd']} (mean {v['even_odd_mean']})")
            else:
                terms = " + ".join(f"({c})e^(-in*{th})" for c, th in v["terms"])
                lines.append(f"  {v['letter']}: oscillates like {terms}")
        for e in rep.get("empirical", []):
            lines.append(f"  n={e['n']} {e['letter']}: a[p^n-1]={e['count_below']} "
                         f"a[p^n]={e['count_upto']} ratio {e['ratio']} predicted "
                         f"{e['predicted']} error {e['error']}")
        return "\n".join(lines)
    if kind == "error":
        return f"error [{rep['code']}]: {rep['message']}"
    raise ValueError(f"unknown report kind {kind!r}")
