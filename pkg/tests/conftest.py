"""Shared fixtures: bundled-style corpora, trained models, and a demo client.

Training fixtures are session-scoped because each one costs real time;
every test that needs a trained model shares the same run. Server
contract tests use randomly initialized models — the HTTP contract does
not depend on training quality.
"""
import time

import numpy as np
import pytest

from jamlab.corpus import make_drum_corpus, make_leadsheet_corpus, save_jsonl
from jamlab.models.drum_vae import DrumVae, DrumVaeConfig, train_drum_vae
from jamlab.models.harmonizer import Harmonizer, HarmonizerConfig, train_harmonizer
from jamlab.models.leadsheet_vae import (
    LeadSheetVae,
    LeadSheetVaeConfig,
    train_leadsheet_vae,
)
from jamlab.nn import save_weights

HARMONIZER_SPLIT = 96


@pytest.fixture(scope="session")
def drum_corpus():
    return make_drum_corpus(64, seed=11)


@pytest.fixture(scope="session")
def sheet_corpus():
    return make_leadsheet_corpus(128, seed=13)


@pytest.fixture(scope="session")
def trained_drum(drum_corpus, tmp_path_factory):
    """(model, weight file path, training seconds) for the standard config."""
    out = tmp_path_factory.mktemp("drum") / "drum-vae.weights"
    start = time.monotonic()
    model, _ = train_drum_vae(drum_corpus, out_path=out)
    return model, out, time.monotonic() - start


@pytest.fixture(scope="session")
def trained_leadsheet(sheet_corpus, tmp_path_factory):
    out = tmp_path_factory.mktemp("leadsheet") / "leadsheet-vae.weights"
    start = time.monotonic()
    model, _ = train_leadsheet_vae(sheet_corpus, out_path=out)
    return model, out, time.monotonic() - start


@pytest.fixture(scope="session")
def trained_harmonizer(sheet_corpus, tmp_path_factory):
    """Model trained on the first 96 sheets; the last 32 stay held out."""
    out = tmp_path_factory.mktemp("harmonizer") / "harmonizer.weights"
    start = time.monotonic()
    model, _ = train_harmonizer(sheet_corpus[:HARMONIZER_SPLIT], out_path=out)
    return model, out, time.monotonic() - start


@pytest.fixture(scope="session")
def demo_dirs(tmp_path_factory):
    """Weights/corpus/static directories for an untrained demo server."""
    root = tmp_path_factory.mktemp("demo")
    weights = root / "weights"
    corpus = root / "corpus"
    static = root / "static"
    for d in (weights, corpus, static):
        d.mkdir()
    rng = np.random.default_rng(0)
    save_weights(DrumVae(DrumVaeConfig(), rng).to_weights(),
                 weights / "drum-vae.weights")
    save_weights(LeadSheetVae(LeadSheetVaeConfig(), rng).to_weights(),
                 weights / "leadsheet-vae.weights")
    save_weights(LeadSheetVae(LeadSheetVaeConfig(seed=99), rng).to_weights(),
                 weights / "leadsheet-vae-alt.weights")
    save_weights(Harmonizer(HarmonizerConfig(), rng).to_weights(),
                 weights / "harmonizer.weights")
    save_jsonl(corpus / "leadsheets.jsonl", make_leadsheet_corpus(16, seed=5))
    (static / "index.html").write_text("<h1>demo</h1>")
    (static / "app.js").write_text("console.log('demo')")
    (static / "style.css").write_text("body{margin:0}")
    return {"weights": weights, "corpus": corpus, "static": static}


@pytest.fixture(scope="session")
def api_client(demo_dirs):
    from fastapi.testclient import TestClient

    from jamlab.server import DemoConfig, create_app

    app = create_app(DemoConfig(weights_dir=demo_dirs["weights"],
                                corpus_dir=demo_dirs["corpus"],
                                static_dir=demo_dirs["static"]))
    return TestClient(app, raise_server_exceptions=False)
