"""Smoke tests for the python bindings against the bundled dataset."""

import math
import os

import pytest

import pcmrank

DATA = os.path.join(os.environ.get("PCMRANK_DATA", "data"), "atp_top25.csv")


@pytest.fixture(scope="module")
def records():
    return pcmrank.load_dataset(DATA)


@pytest.fixture(scope="module")
def labels(records):
    return pcmrank.labels_from_records(records)


def test_dataset_shape(records, labels):
    assert len(records) == 158
    assert len(labels) == 25
    assert labels[0] == "Agassi"
    assert sum(r.total() for r in records) == 1351


def test_llsm_ranking_top_and_bottom(records, labels):
    config = pcmrank.PipelineConfig(method="llsm", correction=2, transform=True)
    run = pcmrank.run_pipeline(records, labels, config)
    order = run.ranking.order()
    assert order[:3] == ["Nadal", "Federer", "Sampras"]
    assert order[-3:] == ["Courier", "Muster", "Connors"]
    assert math.isclose(sum(run.weights.weights), 1.0, rel_tol=1e-9)


def test_matrix_statistics(records, labels):
    pcm, zero_loss = pcmrank.build_raw_pcm(records, labels)
    corrected = pcmrank.apply_correction(pcm, zero_loss, method=2)
    assert len(zero_loss) == 37
    assert math.isclose(pcmrank.density(corrected), 341 / 625, rel_tol=0)
    graph = pcmrank.graph_of(corrected)
    assert pcmrank.is_connected(graph)
    degrees = dict(pcmrank.degree_distribution(graph, labels))
    assert degrees["Agassi"] == 20
    assert degrees["Newcombe"] == 4
    count, cycles = pcmrank.intransitive_triads(records, labels)
    assert count == 50
    assert len(cycles) == 50


def test_transformation_entry(records, labels):
    pcm, zero_loss = pcmrank.build_raw_pcm(records, labels)
    corrected = pcmrank.apply_correction(pcm, zero_loss, method=2)
    transformed = pcmrank.apply_transformation(corrected, records)
    i = labels.index("Agassi")
    j = labels.index("Becker")
    assert math.isclose(transformed.at(i, j), 2.5 ** (14 / 39), rel_tol=1e-12)


def test_small_solvers():
    pcm = pcmrank.IncompletePCM(["A", "B", "C"])
    pcm.set_pair(0, 1, 2.0)
    pcm.set_pair(1, 2, 3.0)
    weights = pcmrank.llsm_weights(pcm)
    assert math.isclose(weights[0], 0.6, rel_tol=1e-9)
    completion = pcmrank.em_complete(pcm)
    assert math.isclose(completion.variables[0], 6.0, rel_tol=1e-5)
    assert math.isclose(completion.lambda_max, 3.0, rel_tol=1e-8)
    assert pcmrank.consistency_index(3.0536215758789726, 3) == pytest.approx(
        0.0268, abs=1e-4
    )


def test_spearman_and_errors():
    r1 = pcmrank.ranking_from_weights([0.5, 0.3, 0.2], ["A", "B", "C"])
    r2 = pcmrank.ranking_from_weights([0.2, 0.3, 0.5], ["A", "B", "C"])
    assert pcmrank.spearman(r1, r1) == pytest.approx(1.0)
    assert pcmrank.spearman(r1, r2) == pytest.approx(-1.0)

    disconnected = pcmrank.IncompletePCM(["A", "B", "C", "D"])
    disconnected.set_pair(0, 1, 2.0)
    disconnected.set_pair(2, 3, 2.0)
    with pytest.raises(pcmrank.PcmError):
        pcmrank.llsm_weights(disconnected)


def test_perturbation(records, labels):
    config = pcmrank.PipelineConfig(method="llsm", correction=2)
    before, after, sp = pcmrank.perturb_remove_player(
        records, labels, "Newcombe", config
    )
    assert len(after.labels) == 24
    assert sp > 0.9
