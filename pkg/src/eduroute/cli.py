"""Command line entry points: serve, ingest, train, bench."""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import click

from .agents.backends import make_backend
from .agents.education import EducationAgent, RetrievalHandle
from .benchmark.harness import run_suite
from .benchmark.suite import Level, load_suite
from .benchmark.tables import format_csv, format_table, reports_to_row
from .classifiers.focal import FocalLossParams
from .classifiers.linear import load_examples, save_model, train as train_head
from .core import ServiceConfig, default_config, load_config
from .errors import EdurouteError
from .retrieval.documents import load_corpus
from .retrieval.embedding import HashedNgramEmbedder, embed_documents
from .retrieval.hnsw import HnswParams, build_index

logger = logging.getLogger(__name__)


@click.group()
def main() -> None:
    """Safety-gated education/psychology chat service."""
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), required=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8080, show_default=True)
def serve(config_path: str, host: str, port: int) -> None:
    """Boot the HTTP service (degraded boot is allowed; see /v1/health)."""
    import uvicorn

    from .orchestrator.service import build_state, create_app

    config = load_config(config_path)
    app = create_app(build_state(config))
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
@click.option("--embed-dim", default=64, show_default=True)
@click.option("--hnsw-m", default=16, show_default=True)
@click.option("--ef-construction", default=200, show_default=True)
@click.option("--ef-search", default=128, show_default=True)
@click.option("--seed", default=0, show_default=True)
def ingest(corpus_path: str, out_path: str, embed_dim: int, hnsw_m: int,
           ef_construction: int, ef_search: int, seed: int) -> None:
    """Embed a corpus JSONL and write an index snapshot."""
    docs = load_corpus(corpus_path)
    embedder = HashedNgramEmbedder(dim=embed_dim)
    embedded = embed_documents(docs, embedder)
    params = HnswParams(m=hnsw_m, ef_construction=ef_construction, ef_search=ef_search, seed=seed)
    index = build_index(embedded, params=params)
    index.audit()
    index.save(out_path)
    click.echo(f"indexed {len(docs)} documents -> {out_path}")


@main.command()
@click.option("--head", type=click.Choice(["safety", "intent"]), required=True)
@click.option("--data", "data_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
@click.option("--gamma", default=2.0, show_default=True)
@click.option("--alpha", default=1.0, show_default=True)
@click.option("--epochs", default=5, show_default=True)
@click.option("--lr", default=0.5, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--dim", default=4096, show_default=True)
def train(head: str, data_path: str, out_path: str, gamma: float, alpha: float,
          epochs: int, lr: float, seed: int, dim: int) -> None:
    """Train a classifier head on JSONL examples and save the model."""
    examples = load_examples(data_path)
    params = FocalLossParams(gamma=gamma, alpha=alpha)
    clf = train_head(examples, params, epochs=epochs, lr=lr, seed=seed, dim=dim, head_name=head)
    save_model(clf, out_path)
    click.echo(f"trained {head} head on {len(examples)} examples -> {out_path}")


@main.command()
@click.option("--kind", type=click.Choice(["safety", "intent"]), required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
@click.option("--n-positive", default=2000, show_default=True)
@click.option("--n-negative", default=2000, show_default=True)
@click.option("--seed", default=0, show_default=True)
def synth(kind: str, out_path: str, n_positive: int, n_negative: int, seed: int) -> None:
    """Write synthetic training JSONL for one classifier head."""
    import json as _json

    from .synthdata import gen_intent_examples, gen_safety_examples

    if kind == "safety":
        examples = gen_safety_examples(n_positive, n_negative, seed)
    else:
        examples = gen_intent_examples(n_positive, n_negative, seed)
    with open(out_path, "w", encoding="utf-8") as fh:
        for ex in examples:
            fh.write(_json.dumps({"text": ex.text, "label": ex.label}, ensure_ascii=False) + "\n")
    click.echo(f"wrote {len(examples)} {kind} examples -> {out_path}")


@main.command()
@click.option("--suite", "suite_path", type=click.Path(exists=True), required=True)
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--backend", "backend_name", default="scripted_mock", show_default=True,
              help="scripted_mock, constant:<letter>, or remote")
@click.option("--endpoint", default="", help="generation endpoint for --backend remote")
@click.option("--marker-mode", type=click.Choice(["none", "answer", "golddoc"]), default="none",
              show_default=True)
@click.option("--out-dir", type=click.Path(), default=None, help="write CSV tables here")
@click.option("--floor", type=float, default=None,
              help="exit nonzero if any subject accuracy falls below this percent")
@click.option("--workers", default=1, show_default=True)
@click.option("--row-name", default="eduroute", show_default=True)
def bench(suite_path: str, corpus_path: str, backend_name: str, endpoint: str,
          marker_mode: str, out_dir: str | None, floor: float | None,
          workers: int, row_name: str) -> None:
    """Run a multiple-choice suite through the education pipeline."""
    config = default_config()
    items = load_suite(suite_path)
    docs = load_corpus(corpus_path)
    embedder = HashedNgramEmbedder(dim=config.embed_dim)
    embedded = embed_documents(docs, embedder)
    index = build_index(
        embedded,
        params=HnswParams(m=config.hnsw_m, ef_construction=config.hnsw_ef_construction,
                          ef_search=config.hnsw_ef_search, seed=config.hnsw_seed),
    )
    handle = RetrievalHandle(index=index, documents={d.id: d for d in docs})
    backend = make_backend(backend_name, endpoint)
    agent = EducationAgent(handle, embedder, backend, config)

    mode = None if marker_mode == "none" else marker_mode
    try:
        reports, _ = run_suite(items, agent.answer, marker_mode=mode, workers=workers)
    except EdurouteError as exc:
        raise click.ClickException(str(exc))

    failed_floor = False
    for level in Level:
        level_reports = [r for r in reports if r.level is level]
        if not level_reports:
            continue
        row = reports_to_row(row_name, level_reports, level)
        click.echo(f"\n[{level.value}]")
        click.echo(format_table([row], level))
        if out_dir is not None:
            out = Path(out_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{level.value}.csv").write_text(format_csv([row], level), encoding="utf-8")
        if floor is not None and any(r.accuracy < floor for r in level_reports):
            failed_floor = True

    if failed_floor:
        click.echo(f"\nFAIL: at least one subject below the {floor:.1f} floor", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
