"""Rankings from incomplete pairwise comparison matrices.

The heavy lifting lives in the compiled extension; this package re-exports
its surface. Typical use:

    import pcmrank
    records = pcmrank.load_dataset("data/atp_top25.csv")
    labels = pcmrank.labels_from_records(records)
    run = pcmrank.run_pipeline(records, labels,
                               pcmrank.PipelineConfig(method="llsm",
                                                      correction=2,
                                                      transform=True))
    print(run.ranking.order()[:3])
"""

from ._pcmrank import (
    ComparisonGraph,
    CompletionResult,
    EigenResult,
    HeadToHead,
    IncompletePCM,
    PcmError,
    PipelineConfig,
    PipelineRun,
    Ranking,
    WeightVector,
    ZeroLossPair,
    apply_correction,
    apply_transformation,
    build_raw_pcm,
    config_name,
    connected_components,
    consistency_index,
    correlation_matrix,
    degree_distribution,
    density,
    em_complete,
    em_weights,
    export_graph_dot,
    graph_of,
    intransitive_triads,
    is_connected,
    labels_from_records,
    llsm_weights,
    load_dataset,
    perron_vector,
    perturb_add_match,
    perturb_remove_player,
    ranking_from_weights,
    run_pipeline,
    save_dataset,
    spearman,
    win_loss_ranking,
)

__version__ = "0.1.0"

__all__ = [
    "ComparisonGraph",
    "CompletionResult",
    "EigenResult",
    "HeadToHead",
    "IncompletePCM",
    "PcmError",
    "PipelineConfig",
    "PipelineRun",
    "Ranking",
    "WeightVector",
    "ZeroLossPair",
    "apply_correction",
    "apply_transformation",
    "build_raw_pcm",
    "config_name",
    "connected_components",
    "consistency_index",
    "correlation_matrix",
    "degree_distribution",
    "density",
    "em_complete",
    "em_weights",
    "export_graph_dot",
    "graph_of",
    "intransitive_triads",
    "is_connected",
    "labels_from_records",
    "llsm_weights",
    "load_dataset",
    "perron_vector",
    "perturb_add_match",
    "perturb_remove_player",
    "ranking_from_weights",
    "run_pipeline",
    "save_dataset",
    "spearman",
    "win_loss_ranking",
]
