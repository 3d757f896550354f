"""Command-line entry points: run, vote, eval, serve."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from anea import catfile, categorizer, ensemble, hc_baseline, silver_eval
from anea.compounds import split_head
from anea.corpus import SelectionConfig, TermTable, extract_terms, group_by_head, import_terms, select_tta
from anea.domain_graph import grow, infer_areas, init_graph
from anea.embeddings import load_vectors
from anea.errors import AneaError
from anea.kb import load_dump

# Historical sweep of head-group fractions used to build assessment sheets:
# smaller corpora take the denser sweep.
Z_SUITE_SMALL = (2, 3, 4, 5)
Z_SUITE_LARGE = (3, 4, 5, 7)
Z_SUITE_TERM_LIMIT = 1000

# Word-count window for picking medium-sized articles when assembling corpora.
ARTICLE_WORD_WINDOW = (220, 2500)


def z_suite(unique_term_count: int) -> tuple[int, ...]:
    return Z_SUITE_SMALL if unique_term_count < Z_SUITE_TERM_LIMIT else Z_SUITE_LARGE


def _sha256_path(path: Path) -> str:
    h = hashlib.sha256()
    if path.is_dir():
        for sub in sorted(p for p in path.rglob("*") if p.is_file()):
            h.update(sub.name.encode("utf-8"))
            h.update(sub.read_bytes())
    else:
        h.update(path.read_bytes())
    return h.hexdigest()


def _read_corpus(path: Path) -> list[str]:
    if path.is_dir():
        return [p.read_text(encoding="utf-8") for p in sorted(path.glob("*.txt"))]
    return [path.read_text(encoding="utf-8")]


def _load_table(args) -> tuple[TermTable, int]:
    if args.terms:
        return import_terms(args.terms)
    documents = _read_corpus(Path(args.corpus))
    return extract_terms(documents), 0


def _write_manifest(out: Path, command: str, parameters: dict, inputs: dict[str, str]) -> None:
    manifest = {
        "format": "anea-manifest/1",
        "command": command,
        "parameters": parameters,
        "inputs": {name: _sha256_path(Path(p)) for name, p in inputs.items() if p},
        "output": {"path": str(out), "sha256": catfile.sha256_file(str(out))},
    }
    out.with_suffix(out.suffix + ".manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _single_run(
    table: TermTable,
    kb,
    store,
    tta_count: int | None,
    z: int | None,
    grow_iterations: int,
    baseline: bool,
    dump_graph: str | None = None,
):
    """One selection + categorization pass; returns (categories, exclusions)."""
    for term in table.terms():
        term.head = split_head(term.surface, kb)
        entry = kb.lookup(term.surface)
        term.kb_link = entry.headword if entry is not None else None
    unresolved = [t.surface for t in table.terms() if t.head is None]

    heads = group_by_head(table)
    if z is not None:
        cfg = SelectionConfig.fraction(z)
    else:
        assert tta_count is not None
        cfg = SelectionConfig.count(tta_count)
    tta = select_tta(table, heads, cfg)

    if baseline:
        surfaces = [t.surface for t in tta]
        clusters, _ = hc_baseline.optimize(surfaces, store, kb)
        categories = []
        for members in clusters:
            cat = categorizer.EntityCategory(label="", terms=set(members))
            categorizer.score_category(cat, store)
            categories.append(cat)
        categories.sort(key=lambda c: (-c.size, c.sorted_terms()[0] if c.terms else ""))
        annotated = set().union(*(c.terms for c in categories)) if categories else set()
        exclusions = set(unresolved) | ({t.surface for t in tta} - annotated)
        return categories, sorted(exclusions)

    graph = init_graph(tta, kb)
    areas = infer_areas(graph, store)
    grow(graph, kb, areas, iterations=grow_iterations)
    if dump_graph:
        Path(dump_graph).write_text(graph.export_text(), encoding="utf-8")
    categories = categorizer.run(tta, graph, store)
    annotated = set().union(*(c.terms for c in categories)) if categories else set()
    tta_surfaces = {t.surface for t in tta}
    exclusions = set(unresolved) | set(graph.excluded_terms) | (tta_surfaces - annotated)
    return categories, sorted(exclusions)


def cmd_run(args) -> int:
    kb = load_dump(args.kb)
    store = load_vectors(args.vectors, kb=kb)
    table, skipped = _load_table(args)
    if skipped:
        print(f"warning: skipped {skipped} term rows containing digits", file=sys.stderr)

    inputs = {"corpus": args.corpus, "terms": args.terms, "kb": args.kb, "vectors": args.vectors}
    out = Path(args.out)

    if args.default_config:
        head_count = len(group_by_head_with_resolution(table, kb))
        counts = ensemble.default_configs(head_count)
        run_files = []
        runs = []
        for count in counts:
            categories, exclusions = _single_run(table, kb, store, count, None, args.grow, args.baseline)
            side = out.with_name(f"{out.stem}-tta{count}{out.suffix}")
            catfile.write(str(side), categories, exclusions, parameters={"tta": count, "grow": args.grow})
            run_files.append(side)
            runs.append((f"tta{count}", categories))
        voted = ensemble.vote(runs)
        all_terms = set()
        all_excl = set()
        for _, cats in runs:
            for c in cats:
                all_terms.update(c.terms)
        for f in run_files:
            _, excl, _ = catfile.read(str(f))
            all_excl.update(excl)
        annotated = set().union(*(c.terms for c in voted)) if voted else set()
        exclusions = sorted(all_excl | (all_terms - annotated))
        catfile.write(str(out), voted, exclusions, parameters={"default_config": list(counts), "grow": args.grow})
        _write_manifest(out, "run", {"default_config": list(counts), "grow": args.grow, "baseline": args.baseline}, inputs)
        print(f"wrote {out} (voted over {list(counts)}) plus {len(run_files)} per-configuration files")
        return 0

    categories, exclusions = _single_run(table, kb, store, args.tta, args.z, args.grow, args.baseline, args.dump_graph)
    parameters = {"z": args.z, "tta": args.tta, "grow": args.grow, "baseline": args.baseline}
    catfile.write(str(out), categories, exclusions, parameters=parameters)
    _write_manifest(out, "run", parameters, inputs)
    print(f"wrote {out}: {len(categories)} categories, {len(exclusions)} excluded terms")
    return 0


def group_by_head_with_resolution(table: TermTable, kb) -> list:
    for term in table.terms():
        if term.head is None:
            term.head = split_head(term.surface, kb)
    return group_by_head(table)


def cmd_vote(args) -> int:
    runs = []
    all_terms: set[str] = set()
    all_excl: set[str] = set()
    for path in args.files:
        categories, exclusions, _ = catfile.read(path)
        runs.append((Path(path).stem, categories))
        all_excl.update(exclusions)
        for c in categories:
            all_terms.update(c.terms)
    voted = ensemble.vote(runs)
    annotated = set().union(*(c.terms for c in voted)) if voted else set()
    exclusions = sorted(all_excl | (all_terms - annotated))
    out = Path(args.out)
    catfile.write(str(out), voted, exclusions, parameters={"voted_from": [Path(p).stem for p in args.files]})
    _write_manifest(out, "vote", {"inputs": list(args.files)}, {f"run{i}": p for i, p in enumerate(args.files)})
    print(f"wrote {out}: {len(voted)} voted categories")
    return 0


def cmd_eval(args) -> int:
    categories, _, _ = catfile.read(args.categories)
    sheets = silver_eval.load_sheets(args.sheets)
    matrices = silver_eval.build_matrices(sheets)
    metrics = silver_eval.evaluate([(c.label, c.sorted_terms()) for c in categories], matrices)
    report = metrics.as_dict()
    line = "  ".join(
        f"{key}={report[key] if report[key] is not None else '--'}"
        for key in ("categories", "annotated_terms", "mean_size", "term_score", "label_score", "average_score")
    )
    print(line)
    if args.out:
        Path(args.out).write_text(json.dumps(report, ensure_ascii=False, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from anea.service import create_app, load_service

    kb = load_dump(args.kb) if args.kb else None
    store = load_vectors(args.vectors, kb=kb)
    service = load_service(args.categories, store)
    app = create_app(service)
    print(f"review service listening on http://127.0.0.1:{args.port}")
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anea", description="Derive and review entity categories for German domain texts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="corpus/terms -> categories file")
    source = p_run.add_mutually_exclusive_group(required=True)
    source.add_argument("--corpus", help="directory of *.txt documents (or a single text file)")
    source.add_argument("--terms", help="surface,frequency CSV of pre-extracted terms")
    p_run.add_argument("--kb", required=True, help="knowledge-base dump (JSONL)")
    p_run.add_argument("--vectors", required=True, help="textual word-vector file")
    selection = p_run.add_mutually_exclusive_group(required=True)
    selection.add_argument("--z", type=int, help="keep terms of the top 1/z head groups")
    selection.add_argument("--tta", type=int, help="keep exactly this many terms-to-annotate")
    selection.add_argument("--default-config", action="store_true", help="run the three recommended TTA counts and vote")
    p_run.add_argument("--grow", type=int, choices=(1, 2), default=2, help="graph growing iterations (default 2)")
    p_run.add_argument("--baseline", action="store_true", help="cluster without labels instead of categorizing")
    p_run.add_argument("--dump-graph", help="also write the grown domain graph (debug JSON) here")
    p_run.add_argument("--out", required=True)
    p_run.set_defaults(func=cmd_run)

    p_vote = sub.add_parser("vote", help="merge 2-4 categories files by voting")
    p_vote.add_argument("files", nargs="+", help="2-4 categories files")
    p_vote.add_argument("--out", required=True)
    p_vote.set_defaults(func=cmd_vote)

    p_eval = sub.add_parser("eval", help="score a categories file against assessment sheets")
    p_eval.add_argument("--categories", required=True)
    p_eval.add_argument("--sheets", required=True, help="directory of sheet files")
    p_eval.add_argument("--out", help="write the metrics report JSON here")
    p_eval.set_defaults(func=cmd_eval)

    p_serve = sub.add_parser("serve", help="start the review service")
    p_serve.add_argument("--categories", required=True)
    p_serve.add_argument("--vectors", required=True)
    p_serve.add_argument("--kb")
    p_serve.add_argument("--port", type=int, default=8321)
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "vote" and not 2 <= len(args.files) <= 4:
        parser.error("vote takes between 2 and 4 categories files")
    try:
        return args.func(args)
    except (AneaError, OSError) as exc:
        print(f"error [{args.command}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
