"""Cluster-based pretraining: alternate feature extraction, k-means
pseudo-labeling and supervised training on the pseudo-labels."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..metrics.classification import MULTI_CLASS
from ..models.losses import loss_and_grad
from ..models.optim import Adam
from ..seeding import derive_seed
from .kmeans import kmeans, nmi

logger = logging.getLogger("terraml")


@dataclass(frozen=True)
class CycleRecord:
    cycle: int
    inertia: float
    nmi_vs_prev: float | None  # None on the first cycle
    mean_train_loss: float


def extract_features(model, dataset) -> np.ndarray:
    """Penultimate-layer features, dataset order, rows L2-normalized.

    Augmentation-free: batches are iterated in dataset order with the epoch-0
    stream, and zero rows are left as zeros.
    """
    blocks = []
    for batch in dataset.iterate_batches(epoch=0, ordered=True):
        blocks.append(model.features(batch.images))
    feats = np.concatenate(blocks)
    norms = np.linalg.norm(feats, axis=1, keepdims=True)
    return np.where(norms > 0, feats / np.where(norms > 0, norms, 1.0), 0.0)


def write_cycle_report(records, path) -> None:
    """CSV export: cycle,inertia,nmi_vs_prev,mean_train_loss."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("cycle,inertia,nmi_vs_prev,mean_train_loss\n")
        for rec in records:
            nmi_cell = "" if rec.nmi_vs_prev is None else repr(rec.nmi_vs_prev)
            fh.write(f"{rec.cycle},{rec.inertia!r},{nmi_cell},{rec.mean_train_loss!r}\n")


def deepcluster_pretrain(
    model,
    dataset,
    k: int,
    cycles: int,
    epochs_per_cycle: int,
    seed: int = 42,
    event_writer=None,
    run_id: str = "pretrain",
) -> tuple[object, list[CycleRecord]]:
    """Pseudo-label pretraining; dataset targets are ignored.

    Per cycle: extract features → k-means into k pseudo-classes → fresh
    classifier head of width k → train ``epochs_per_cycle`` epochs with the
    multi-class loss on the pseudo-labels. Returns the model with a fresh
    head of its configured width (the pseudo-label heads are discarded) and
    the per-cycle report. ``cycles=0`` leaves the model untouched.
    """
    if model.net is None:
        model.prepare(seed=derive_seed(seed, "model"))
    if cycles == 0:
        return model, []

    records: list[CycleRecord] = []
    prev_labels: np.ndarray | None = None
    for cycle in range(1, cycles + 1):
        feats = extract_features(model, dataset)
        assignment = kmeans(
            feats,
            k,
            seed=derive_seed(seed, "cluster", cycle),
            max_iter=100,
            ids=dataset.ids,
            n_init=5,
        )
        agreement = None if prev_labels is None else nmi(prev_labels, assignment.labels)
        prev_labels = assignment.labels

        model.reset_head(k, seed=derive_seed(seed, "cluster-head", cycle))
        optimizer = Adam(model.learning_rate)
        losses = []
        for epoch in range(1, epochs_per_cycle + 1):
            for batch in dataset.iterate_batches(epoch=(cycle - 1) * epochs_per_cycle + epoch):
                pseudo = assignment.labels[batch.indices]
                logits = model.forward(batch.images)
                loss, grad = loss_and_grad(logits, pseudo, MULTI_CLASS)
                model.backward(grad)
                optimizer.step(model.parameters(), model.gradients())
                losses.append(loss)
        mean_loss = float(np.mean(losses))

        if event_writer is not None:
            event_writer.log(run_id, cycle, cycle, "cluster/inertia", assignment.inertia)
            if agreement is not None:
                event_writer.log(run_id, cycle, cycle, "cluster/nmi_vs_prev", agreement)
        records.append(CycleRecord(cycle, assignment.inertia, agreement, mean_loss))
        logger.info(
            "cluster cycle %d/%d: inertia=%.4f nmi_vs_prev=%s loss=%.4f",
            cycle,
            cycles,
            assignment.inertia,
            "-" if agreement is None else f"{agreement:.4f}",
            mean_loss,
        )

    # Detach the last pseudo-label head: the returned model carries the
    # trained backbone and a fresh head of its configured output width.
    model.reset_head(model.num_classes, seed=derive_seed(seed, "final-head"))
    return model, records
