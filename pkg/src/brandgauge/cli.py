"""Command-line interface.

Report-producing subcommands (`stats`, `consistency`, `eval`) write a
delimited table plus a PNG figure next to it; everything else emits JSON
or JSONL. Domain errors exit 1; argparse handles usage errors with exit 2.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
import urllib.request
from pathlib import Path
from typing import Optional, Sequence

from . import classify, consistency, corpus, evaluation, plots, ranker
from .classify import TRAITS, LabeledExample, ModelBundle, TrainConfig, assess
from .config import Config, load_config
from .errors import BrandGaugeError
from .features import FeatureLexicons, TfidfConfig, extract_features, tfidf_fit
from .lexicons import (
    SentimentRules,
    load_bundled_collocations,
    load_bundled_contractions,
    load_demo_category_lexicon,
    load_demo_sentiment_lexicon,
    load_phrase_list,
    load_sentiment_lexicon,
    parse_category_lexicon,
)
from .ranker import CentralEntitySet, RankingContext
from .textcore import Document


def build_feature_lexicons(cfg: Config) -> FeatureLexicons:
    if cfg.category_lexicon_path:
        categories = parse_category_lexicon(Path(cfg.category_lexicon_path).read_text(encoding="utf-8"))
    else:
        categories = load_demo_category_lexicon()
    if cfg.contractions_path:
        contractions = load_phrase_list(Path(cfg.contractions_path).read_text(encoding="utf-8"), max_n=1)
    else:
        contractions = load_bundled_contractions()
    if cfg.collocations_path:
        collocations = load_phrase_list(Path(cfg.collocations_path).read_text(encoding="utf-8"), max_n=3)
    else:
        collocations = load_bundled_collocations()
    return FeatureLexicons(categories, contractions, collocations)


def build_sentiment_lexicon(cfg: Config):
    if cfg.sentiment_lexicon_path:
        return load_sentiment_lexicon(
            Path(cfg.sentiment_lexicon_path).read_text(encoding="utf-8"),
            Path(cfg.booster_path).read_text(encoding="utf-8") if cfg.booster_path else "",
            Path(cfg.negator_path).read_text(encoding="utf-8") if cfg.negator_path else "",
            cfg.booster_increment,
        )
    return load_demo_sentiment_lexicon(cfg.booster_increment)


def build_ranking_context(bundle: ModelBundle, cfg: Config) -> RankingContext:
    tfidf = bundle.models[TRAITS[0]].tfidf
    if tfidf is None:
        raise BrandGaugeError("bundle models carry no tf-idf model; retrain with the CLI")
    return RankingContext(
        bundle=bundle,
        lexicons=build_feature_lexicons(cfg),
        tfidf=tfidf,
        sentiment=build_sentiment_lexicon(cfg),
        sentence_sim=cfg.sentence_sim,
        sentiment_rules=SentimentRules(
            negation_window=cfg.negation_window,
            negation_flip=cfg.negation_flip,
            booster_window=cfg.booster_window,
        ),
    )


def _read_jsonl(path: str) -> list[dict]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise BrandGaugeError(f"{path}:{lineno}: {exc}")
    return out


def _load_gold(path: str) -> dict[str, evaluation.GoldAnnotation]:
    text = Path(path).read_text(encoding="utf-8").strip()
    if text.startswith("["):
        records = json.loads(text)
    else:
        records = [json.loads(line) for line in text.splitlines() if line.strip()]
    out = {}
    for rec in records:
        aid = str(rec["article_id"])
        out[aid] = evaluation.GoldAnnotation(aid, tuple(rec["gold_sentence_indices"]))
    return out


def _doc_from_record(rec: corpus.CrawlRecord) -> Document:
    return Document.from_text(
        rec.text,
        id=rec.id,
        company=rec.company,
        page_type=(rec.page_type.klass, rec.page_type.kind),
        timestamp=rec.timestamp,
    )


def _ranked_to_json(article_id: str, method: str, k: int, ranked) -> dict:
    return {
        "article_id": article_id,
        "method": method,
        "k": k,
        "sentences": [
            {
                "sentence_index": r.index,
                "relevance": r.relevance,
                "whether_neg": r.aspects.whether_neg,
                "neg_scr": r.aspects.neg_scr,
                "pos_scr": r.aspects.pos_scr,
                "whether_central": r.aspects.whether_central,
                "central_mentions": r.aspects.central_mentions,
                "sentence_bin_sim": r.aspects.sentence_bin_sim,
                "text": r.text,
            }
            for r in ranked
        ],
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_ingest(args, cfg: Config) -> int:
    records = []
    skipped = 0
    with open(args.pages, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise BrandGaugeError(
                    f"{args.pages}:{lineno}: expected 'url<TAB>company<TAB>markup-file'"
                )
            url, company, markup_path = parts
            page_type = corpus.classify_url(url)
            if page_type.klass == "excluded":
                skipped += 1
                continue
            markup = Path(markup_path).read_text(encoding="utf-8")
            paragraphs, warning = corpus.extract_paragraphs(markup)
            text = "\n\n".join(paragraphs)
            meta = {}
            if warning:
                meta["markup_warning"] = True
            ratio = corpus.ascii_ratio(text)
            if ratio < 0.9:
                meta["low_ascii_ratio"] = round(ratio, 4)
                if args.drop_non_ascii:
                    skipped += 1
                    continue
            records.append(
                corpus.CrawlRecord(
                    id=hashlib.sha1(url.encode()).hexdigest()[:12],
                    url=url,
                    company=company,
                    page_type=page_type,
                    text=text,
                    timestamp=corpus.parse_timestamp(
                        markup, (cfg.date_range_start, cfg.date_range_end)
                    ),
                    source_meta=meta,
                )
            )
    n = corpus.write_corpus(records, args.out, append=args.append)
    print(f"ingested {n} records ({skipped} skipped) -> {args.out}")
    return 0


def _labeled_examples(
    records: list[dict], lexicons: FeatureLexicons, tfidf, mask
) -> list[LabeledExample]:
    examples = []
    for rec in records:
        doc = Document.from_text(rec["text"], id=str(rec.get("id", "")), company=rec.get("company", ""))
        aliases = [rec["company"]] if rec.get("company") else ["unknown"]
        fv = extract_features(doc, lexicons, tfidf, aliases, block_mask=mask)
        labels = {t: rec["labels"].get(t) for t in TRAITS if t in rec.get("labels", {})}
        examples.append(LabeledExample(fv, labels))
    return examples


def cmd_train(args, cfg: Config) -> int:
    records = _read_jsonl(args.examples)
    if not records:
        raise BrandGaugeError("no training records")
    lexicons = build_feature_lexicons(cfg)
    docs = [Document.from_text(r["text"]) for r in records]
    tfidf = tfidf_fit(
        docs,
        TfidfConfig(min_df=args.min_df or cfg.tfidf_min_df, max_features=args.max_features or cfg.tfidf_max_features),
    )
    mask = tuple(args.mask.split(",")) if args.mask else None
    examples = _labeled_examples(records, lexicons, tfidf, mask)

    config = TrainConfig(
        C=args.C, epochs=args.epochs, seed=args.seed, block_mask=mask
    )
    models = {}
    cv_rows = []
    for trait in TRAITS:
        present = [ex for ex in examples if ex.labels.get(trait) is not None]
        n_pos = sum(1 for ex in present if ex.labels[trait])
        n_neg = len(present) - n_pos
        if n_pos == 0 or n_neg == 0:
            raise BrandGaugeError(f"single-class training data for trait '{trait}'")
        cv = classify.cross_validate(examples, trait, folds=args.folds, config=config)
        model = classify.train_trait_model(
            examples, trait, config, tfidf=tfidf, category_ids=lexicons.categories.category_ids()
        )
        model.train_meta.update({"folds": args.folds, "f1": round(cv.mean_f1, 6)})
        models[trait] = model
        cv_rows.append((trait, cv.mean_precision, cv.mean_recall, cv.mean_f1))

    manifest = classify.save_bundle(models, args.out_dir, name=args.name)
    report_path = Path(args.out_dir) / f"{args.name}.cv_report.tsv"
    with open(report_path, "w", encoding="utf-8") as fh:
        fh.write("trait\tprecision\trecall\tf1\n")
        for trait, p, r, f in cv_rows:
            fh.write(f"{trait}\t{p:.6f}\t{r:.6f}\t{f:.6f}\n")
    print(f"wrote bundle {manifest} and CV report {report_path}")
    for trait, p, r, f in cv_rows:
        print(f"  {trait}: precision={p:.3f} recall={r:.3f} f1={f:.3f}")
    return 0


def cmd_score(args, cfg: Config) -> int:
    bundle = classify.load_bundle(args.bundle)
    ctx = build_ranking_context(bundle, cfg)
    records = corpus.read_corpus(args.corpus)
    rows = []
    for rec in records:
        doc = _doc_from_record(rec)
        aliases = [rec.company] if rec.company else ["unknown"]
        fv = extract_features(doc, ctx.lexicons, ctx.tfidf, aliases)
        assessment = assess(bundle.models, fv, label_threshold=cfg.label_threshold)
        rows.append((rec, assessment))
    if args.high_fidelity:
        rows = classify.high_fidelity_filter(rows, tau=args.tau or cfg.high_fidelity_tau)
    with open(args.out, "w", encoding="utf-8") as fh:
        for rec, assessment in rows:
            fh.write(
                json.dumps(
                    {
                        "id": rec.id,
                        "company": rec.company,
                        "page_type": rec.page_type.klass,
                        "kind": rec.page_type.kind,
                        "timestamp": rec.timestamp.isoformat() if rec.timestamp else None,
                        "confidences": list(assessment.confidences),
                        "label_vector": list(assessment.label_vector),
                        "rank_vector": list(assessment.rank_vector),
                    },
                    sort_keys=True,
                )
                + "\n"
            )
    print(f"scored {len(rows)} records -> {args.out}")
    return 0


def _assessment_from_row(row: dict) -> classify.TraitAssessment:
    return classify.TraitAssessment(
        tuple(float(c) for c in row["confidences"]),
        tuple(int(b) for b in row["label_vector"]),
        tuple(int(r) for r in row["rank_vector"]),
    )


def cmd_profile(args, cfg: Config) -> int:
    rows = _read_jsonl(args.assessments)
    from datetime import date as _date

    by_company: dict[str, list[dict]] = {}
    for row in rows:
        if row.get("page_type") != "static":
            continue
        if args.company and row.get("company") != args.company:
            continue
        by_company.setdefault(row.get("company", ""), []).append(row)
    if not by_company:
        raise BrandGaugeError("no static assessments to build profiles from")
    profiles = []
    for company in sorted(by_company):
        group = by_company[company]
        assessments = [_assessment_from_row(r) for r in group]
        dates = [
            _date.fromisoformat(r["timestamp"]) if r.get("timestamp") else None
            for r in group
        ]
        profiles.append(
            consistency.representative_vectors(assessments, company=company, dates=dates)
        )
    consistency.save_profiles(profiles, args.out)
    print(f"wrote {len(profiles)} profiles -> {args.out}")
    return 0


def cmd_consistency(args, cfg: Config) -> int:
    from datetime import date as _date

    rows = _read_jsonl(args.assessments)
    profiles = consistency.load_profiles(args.profiles)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    bin_weeks = args.bin_weeks or cfg.bin_weeks

    report_rows = []
    summary_rows = []
    bin_rows = []
    for company in sorted({r.get("company", "") for r in rows}):
        if company not in profiles:
            continue
        profile = profiles[company]
        group = [r for r in rows if r.get("company") == company and r.get("page_type") != "static"]
        if not group:
            continue
        reports = []
        dated = []
        for row in group:
            report = consistency.compare_to_profile(
                _assessment_from_row(row),
                profile,
                strong_bin=cfg.strong_bin_cutoff,
                strong_rank=cfg.strong_rank_cutoff,
                not_consistent_bin=cfg.not_consistent_bin_cutoff,
            )
            reports.append(report)
            report_rows.append((row.get("id", ""), company, report))
            if row.get("timestamp"):
                dated.append((_date.fromisoformat(row["timestamp"]), report))
        scr = consistency.brand_cons_score(reports)
        summary_rows.append((company, len(reports), scr))
        if dated:
            bins = consistency.temporal_consistency(dated, bin_weeks=bin_weeks)
            for b in bins:
                bin_rows.append((company, b))
            plots.plot_temporal_bins(
                bins, str(out_dir / f"temporal_{_slug(company)}.png"), company=company
            )

    if not summary_rows:
        raise BrandGaugeError("no companies had both a profile and dynamic assessments")

    with open(out_dir / "reports.tsv", "w", encoding="utf-8") as fh:
        fh.write("id\tcompany\tbin_label_sim\trank_label_sim\tlevel\n")
        for rid, company, report in report_rows:
            fh.write(
                f"{rid}\t{company}\t{report.bin_label_sim:.6f}\t{report.rank_label_sim:.6f}\t{report.level}\n"
            )
    with open(out_dir / "summary.tsv", "w", encoding="utf-8") as fh:
        fh.write("company\tposts\tbrand_cons_scr\n")
        for company, n, scr in summary_rows:
            fh.write(f"{company}\t{n}\t{scr:.6f}\n")
    with open(out_dir / "temporal_bins.tsv", "w", encoding="utf-8") as fh:
        fh.write("company\tbin_start\tweeks\tposts\tbrand_cons_scr\tis_consistent\n")
        for company, b in bin_rows:
            fh.write(
                f"{company}\t{b.start.isoformat()}\t{b.duration_weeks}\t{b.post_count}\t"
                f"{b.brand_cons_scr:.6f}\t{int(b.is_consistent)}\n"
            )
    print(f"wrote consistency reports for {len(summary_rows)} companies -> {out_dir}")
    return 0


def _slug(name: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in name)[:40] or "company"


def _load_profile_for(args, profiles_path: str) -> consistency.CompanyProfile:
    profiles = consistency.load_profiles(profiles_path)
    if getattr(args, "company", None):
        if args.company not in profiles:
            raise BrandGaugeError(f"no profile for company {args.company!r}")
        return profiles[args.company]
    if len(profiles) == 1:
        return next(iter(profiles.values()))
    raise BrandGaugeError(
        f"profile file has {len(profiles)} companies; pick one with --company"
    )


def cmd_rank(args, cfg: Config) -> int:
    bundle = classify.load_bundle(args.bundle)
    ctx = build_ranking_context(bundle, cfg)
    profile = _load_profile_for(args, args.profile)
    text = Path(args.article).read_text(encoding="utf-8")
    doc = Document.from_text(text, id=args.article_id or Path(args.article).stem, company=profile.company)

    curated: frozenset[str] = frozenset()
    if args.entities:
        curated = frozenset(
            ln.strip().lower()
            for ln in Path(args.entities).read_text(encoding="utf-8").splitlines()
            if ln.strip()
        )
    elif args.auto_entities:
        curated = frozenset(e for e, _ in ranker.detect_entities(doc, min_freq=3))
    central = CentralEntitySet.for_company(
        aliases=tuple(args.alias or ([profile.company] if profile.company else [])),
        curated=curated,
        resolve_pronouns=not args.no_pronouns,
    )
    ranked = ranker.rank_with_method(
        args.method, doc, profile, central, ctx, seed=args.seed, k=args.k
    )
    payload = _ranked_to_json(doc.id, args.method, args.k, ranked)
    blob = json.dumps(payload, sort_keys=True, indent=2)
    if args.out:
        Path(args.out).write_text(blob + "\n", encoding="utf-8")
        print(f"wrote ranking -> {args.out}")
    else:
        print(blob)
    return 0


def cmd_eval(args, cfg: Config) -> int:
    golds = _load_gold(args.gold)
    ranking_records = _read_jsonl(args.rankings)
    articles = corpus.read_corpus(args.articles)
    docs = {rec.id: _doc_from_record(rec) for rec in articles}

    selections: dict[str, dict[str, list[int]]] = {}
    for rec in ranking_records:
        method = rec["method"]
        aid = str(rec["article_id"])
        if aid not in docs:
            raise BrandGaugeError(f"ranking references unknown article {aid!r}")
        selections.setdefault(method, {})[aid] = [
            s["sentence_index"] for s in rec["sentences"]
        ]
    rows = evaluation.metric_rows_from_selections(selections, docs, golds)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    table = out_dir / "metrics.tsv"
    with open(table, "w", encoding="utf-8") as fh:
        fh.write("method\trouge1\trouge2\trougeL\tprec1\tprec2\tprec3\tp_rouge1\tp_prec3\n")
        for row in rows:
            fh.write(
                f"{row.method}\t{row.rouge1:.6f}\t{row.rouge2:.6f}\t{row.rougeL:.6f}\t"
                f"{row.prec1:.6f}\t{row.prec2:.6f}\t{row.prec3:.6f}\t"
                f"{row.p_values.get('rouge1', float('nan')):.3e}\t"
                f"{row.p_values.get('prec3', float('nan')):.3e}\n"
            )
    (out_dir / "metrics.json").write_text(
        json.dumps(
            [
                {
                    "method": r.method,
                    "rouge1": r.rouge1,
                    "rouge2": r.rouge2,
                    "rougeL": r.rougeL,
                    "prec1": r.prec1,
                    "prec2": r.prec2,
                    "prec3": r.prec3,
                    "p_values": r.p_values,
                }
                for r in rows
            ],
            sort_keys=True,
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    plots.plot_metric_bars(rows, str(out_dir / "metrics.png"))
    with open(table, encoding="utf-8") as fh:
        print(fh.read().rstrip())
    return 0


def cmd_stats(args, cfg: Config) -> int:
    records = corpus.read_corpus(args.corpus)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    companies = sorted({r.company for r in records})
    if args.company:
        companies = [c for c in companies if c == args.company]
        if not companies:
            raise BrandGaugeError(f"no records for company {args.company!r}")
    metadata = corpus.read_company_metadata(args.companies) if args.companies else {}

    with open(out_dir / "posting_stats.tsv", "w", encoding="utf-8") as fh:
        fh.write("company\tsector\tposts\tdated\tmonth_end_fraction\tmedian_iat_days\n")
        for company in companies:
            sector = metadata[company].sector if company in metadata else "-"
            group = [r for r in records if r.company == company]
            dates = sorted(r.timestamp for r in group if r.timestamp)
            if not dates:
                fh.write(f"{company}\t{sector}\t{len(group)}\t0\t-\t-\n")
                continue
            month_end = corpus.month_end_fraction(dates)
            if len(dates) < 2:
                fh.write(f"{company}\t{sector}\t{len(group)}\t1\t{month_end:.6f}\t-\n")
                continue
            stats = corpus.posting_stats(dates)
            iats = sorted(stats.iat_days)
            median = iats[len(iats) // 2]
            fh.write(
                f"{company}\t{sector}\t{len(group)}\t{len(dates)}\t{month_end:.6f}\t{median}\n"
            )
            with open(out_dir / f"iat_ccdf_{_slug(company)}.tsv", "w", encoding="utf-8") as cf:
                cf.write("iat_days\tccdf\n")
                for d, frac in stats.ccdf:
                    cf.write(f"{d}\t{frac:.6f}\n")
            plots.plot_iat_ccdf(
                stats,
                str(out_dir / f"iat_ccdf_{_slug(company)}.png"),
                title=f"IAT CCDF — {company}",
            )
    print(f"wrote posting stats for {len(companies)} companies -> {out_dir}")
    return 0


def cmd_serve(args, cfg: Config) -> int:
    import uvicorn

    from .service import create_service

    service = create_service(
        bundle_path=args.bundle, profiles_path=args.profiles, cfg=cfg
    )
    uvicorn.run(service.app, host=args.host, port=args.port)
    return 0


def cmd_fetch(args, cfg: Config) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    urls = [
        ln.strip()
        for ln in Path(args.urls).read_text(encoding="utf-8").splitlines()
        if ln.strip() and not ln.startswith("#")
    ]
    for i, url in enumerate(urls):
        if i:
            time.sleep(args.delay)
        name = hashlib.sha1(url.encode()).hexdigest()[:12] + ".html"
        try:
            with urllib.request.urlopen(url, timeout=args.timeout) as resp:
                (out_dir / name).write_bytes(resp.read())
            print(f"fetched {url} -> {name}")
        except Exception as exc:
            print(f"failed {url}: {exc}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brandgauge",
        description="Brand-personality scoring, consistency measurement and rewrite ranking.",
    )
    parser.add_argument("--config", help="config file (key = value); else $BRANDGAUGE_CONFIG")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="markup pages -> corpus JSONL")
    p.add_argument("--pages", required=True, help="TSV: url<TAB>company<TAB>markup-file")
    p.add_argument("--out", required=True)
    p.add_argument("--append", action="store_true")
    p.add_argument("--drop-non-ascii", action="store_true")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("train", help="labeled examples -> five trait models + CV report")
    p.add_argument("--examples", required=True, help="JSONL: {id, text, company?, labels}")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--name", default="flcs")
    p.add_argument("--folds", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--epochs", type=int, default=300)
    p.add_argument("--min-df", type=int, default=None)
    p.add_argument("--max-features", type=int, default=None)
    p.add_argument("--mask", help="comma-separated feature blocks (default: all)")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("score", help="corpus -> trait assessments JSONL")
    p.add_argument("--corpus", required=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--high-fidelity", action="store_true")
    p.add_argument("--tau", type=float, default=None)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("profile", help="static assessments -> company profiles")
    p.add_argument("--assessments", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--company", default=None)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("consistency", help="assessments + profiles -> reports, scores, bins")
    p.add_argument("--assessments", required=True)
    p.add_argument("--profiles", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--bin-weeks", type=int, default=None)
    p.set_defaults(func=cmd_consistency)

    p = sub.add_parser("rank", help="article + profile -> ranked sentences")
    p.add_argument("--article", required=True, help="plain-text article file")
    p.add_argument("--article-id", default=None)
    p.add_argument("--profile", required=True, help="profile file")
    p.add_argument("--company", default=None)
    p.add_argument("--bundle", required=True)
    p.add_argument("--method", default="masr3", choices=(ranker.MASR3, *ranker.BASELINE_METHODS))
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--entities", default=None, help="curated central entities, one per line")
    p.add_argument("--auto-entities", action="store_true")
    p.add_argument("--alias", action="append", help="company alias (repeatable)")
    p.add_argument("--no-pronouns", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("eval", help="rankings + GOLD -> metric table + figure")
    p.add_argument("--gold", required=True)
    p.add_argument("--rankings", required=True, help="JSONL of rank outputs")
    p.add_argument("--articles", required=True, help="corpus JSONL with the articles")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("stats", help="corpus -> posting statistics + CCDF figure")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--company", default=None)
    p.add_argument("--companies", default=None, help="company metadata JSONL (sector column)")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("serve", help="start the HTTP JSON service")
    p.add_argument("--bundle", required=True)
    p.add_argument("--profiles", default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("fetch", help="retrieve URLs politely into a directory")
    p.add_argument("--urls", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--delay", type=float, default=1.0)
    p.add_argument("--timeout", type=float, default=10.0)
    p.set_defaults(func=cmd_fetch)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except (BrandGaugeError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
