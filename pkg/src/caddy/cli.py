"""Command line interface: caddy run | parse | simulate | ncmf train/eval."""

import dataclasses
import json

import click
import numpy as np

from . import grammar, segmenter
from .commands import command_text
from .config import ConfigError, SessionConfig, load_config
from .grammar import SyntaxFault
from .ncmf import data as ncmf_data
from .ncmf import forest as ncmf_forest
from .session import load_scenario, report_json, run_scenario
from .tokens import TokenError, read_token_file


@click.group()
def main():
    """Diver gesture mission pipeline."""


def _load_config(path) -> SessionConfig:
    if path is None:
        return SessionConfig()
    try:
        return load_config(path)
    except ConfigError as exc:
        raise click.ClickException(f"bad config: {exc}")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--host", default="127.0.0.1", show_default=True)
def run(config_path, host):
    """Start the tablet feedback server."""
    from .server import run_server

    run_server(_load_config(config_path), host=host)


@main.command()
@click.argument("tokens_file", type=click.Path(exists=True))
def parse(tokens_file):
    """Segment a token file into phrases and print one verdict per phrase."""
    try:
        tokens = read_token_file(tokens_file)
    except TokenError as exc:
        raise click.ClickException(str(exc))
    state = segmenter.reset()
    phrase_index = 0
    for token in tokens:
        state, events = segmenter.feed(state, token)
        for event in events:
            if isinstance(event, (segmenter.PhraseComplete, segmenter.EmptyPhrase)):
                phrase = event.tokens if isinstance(event, segmenter.PhraseComplete) else ()
                result = grammar.check(phrase)
                if isinstance(result, SyntaxFault):
                    doc = {
                        "phrase_index": phrase_index,
                        "ok": False,
                        "command": None,
                        "error": {"code": result.code.value, "position": result.position},
                    }
                else:
                    doc = {
                        "phrase_index": phrase_index,
                        "ok": True,
                        "command": command_text(result),
                        "error": None,
                    }
                click.echo(json.dumps(doc, sort_keys=True, separators=(",", ":")))
                phrase_index += 1
            elif isinstance(event, segmenter.StrayToken):
                click.echo(f"# stray token: {event.token.mnemonic}", err=True)
            elif isinstance(event, segmenter.Emergency):
                click.echo("# emergency token: segmentation reset", err=True)


@main.command()
@click.option("--scenario", "scenario_path", type=click.Path(exists=True), required=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--noise", type=float, default=None, help="Override symmetric error rate.")
@click.option("--report", "report_format", type=click.Choice(["json"]), default=None)
@click.option("--log", "log_path", type=click.Path(), default=None,
              help="Write the feedback message log to this file.")
@click.option("--frames-per-gesture", type=int, default=15, show_default=True)
@click.option("--gap-frames", type=int, default=5, show_default=True)
@click.option("--max-ticks", type=int, default=500_000, show_default=True)
def simulate(scenario_path, config_path, noise, report_format, log_path,
             frames_per_gesture, gap_frames, max_ticks):
    """Run a scripted scenario offline (no sockets)."""
    config = _load_config(config_path)
    if noise is not None:
        config = dataclasses.replace(
            config, noise=dataclasses.replace(config.noise, error_rate=noise)
        )
    try:
        steps = load_scenario(scenario_path)
    except (ValueError, TokenError) as exc:
        raise click.ClickException(f"bad scenario: {exc}")
    session, report = run_scenario(
        steps,
        config,
        frames_per_gesture=frames_per_gesture,
        gap_frames=gap_frames,
        max_ticks=max_ticks,
    )
    if log_path:
        with open(log_path, "w", encoding="utf-8") as fh:
            for line in session.log:
                fh.write(line + "\n")
    if report_format == "json":
        click.echo(report_json(report))
    else:
        click.echo(
            f"gestures={report['gestures_sent']} events={report['events_recognized']} "
            f"validated={report['commands_validated']} rejected={report['commands_rejected']} "
            f"missions={report['missions_completed']} "
            f"event_error_rate={report['event_error_rate']:.4f}"
        )


@main.group()
def ncmf():
    """Nearest-class-mean forest tools."""


def _forest_params(trees, depth, k, min_leaf, seed):
    return ncmf_forest.ForestParams(
        n_trees=trees, max_depth=depth, min_leaf=min_leaf, k=k, seed=seed
    )


def _evaluate(forest, samples):
    classes = [int(c) for c in forest.classes]
    index = {c: i for i, c in enumerate(classes)}
    confusion = np.zeros((len(classes), len(classes)), dtype=int)
    correct = 0
    for s in samples:
        predicted, _ = ncmf_forest.predict(forest, s)
        confusion[index[int(s.label)], index[predicted]] += 1
        correct += int(predicted == int(s.label))
    return {
        "accuracy": correct / len(samples) if samples else 0.0,
        "classes": classes,
        "confusion": confusion.tolist(),
        "n_samples": len(samples),
    }


_FOREST_OPTIONS = [
    click.option("--trees", type=int, default=8, show_default=True),
    click.option("--depth", type=int, default=6, show_default=True),
    click.option("--k", type=int, default=3, show_default=True),
    click.option("--min-leaf", type=int, default=1, show_default=True),
    click.option("--seed", type=int, default=0, show_default=True),
]


def _with_forest_options(fn):
    for opt in reversed(_FOREST_OPTIONS):
        fn = opt(fn)
    return fn


@ncmf.command()
@click.option("--data", "data_path", type=click.Path(exists=True), required=True)
@click.option("--model-out", type=click.Path(), default=None)
@_with_forest_options
def train(data_path, model_out, trees, depth, k, min_leaf, seed):
    """Train a forest and report resubstitution accuracy as JSON."""
    samples = ncmf_data.load_dataset(data_path)
    try:
        forest = ncmf_forest.train(samples, _forest_params(trees, depth, k, min_leaf, seed))
    except (ncmf_forest.DegenerateDataError, ValueError) as exc:
        raise click.ClickException(str(exc))
    if model_out:
        ncmf_data.save_model(model_out, forest)
    click.echo(json.dumps(_evaluate(forest, samples), sort_keys=True))


@ncmf.command()
@click.option("--data", "data_path", type=click.Path(exists=True), required=True)
@click.option("--model", "model_path", type=click.Path(exists=True), default=None,
              help="Saved model; when omitted, trains on --data first.")
@_with_forest_options
def eval(data_path, model_path, trees, depth, k, min_leaf, seed):
    """Evaluate a forest on a dataset; prints accuracy and confusion as JSON."""
    samples = ncmf_data.load_dataset(data_path)
    if model_path:
        forest = ncmf_data.load_model(model_path)
    else:
        try:
            forest = ncmf_forest.train(
                samples, _forest_params(trees, depth, k, min_leaf, seed)
            )
        except (ncmf_forest.DegenerateDataError, ValueError) as exc:
            raise click.ClickException(str(exc))
    click.echo(json.dumps(_evaluate(forest, samples), sort_keys=True))


if __name__ == "__main__":
    main()
