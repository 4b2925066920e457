"""The training loop: seeded batches, Adam steps, per-epoch evaluation,
checkpointing and scalar event logging."""

from __future__ import annotations

import logging
import os
import shutil
import time
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigMismatch
from ..metrics.classification import MULTI_CLASS, MetricReport, compute_report
from ..metrics.events import EventLogWriter
from .checkpoint import checkpoint_path, save_checkpoint
from .losses import loss_and_grad
from .optim import Adam

logger = logging.getLogger("terraml")


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    wall_time_s: float
    report: MetricReport


@dataclass(frozen=True)
class TrainingHistory:
    records: tuple[EpochRecord, ...]
    best_epoch: int
    run_dir: str


def evaluate_model(model, dataset) -> MetricReport:
    """Augmentation-free, ordered pass; decisions per the model's rule."""
    if dataset.num_classes != model.num_classes:
        raise ConfigMismatch(
            f"dataset has {dataset.num_classes} classes, model expects {model.num_classes}"
        )
    trues, decisions = [], []
    for batch in dataset.iterate_batches(epoch=0, ordered=True):
        probs = model.probabilities(model.forward(batch.images))
        decisions.append(model.decide(probs))
        trues.append(batch.targets)
    y_pred = np.concatenate(decisions)
    y_true = np.concatenate(trues)
    if model.TASK_KIND == MULTI_CLASS:
        y_true = y_true.astype(np.int64)
        y_pred = y_pred.argmax(axis=1)
    else:
        y_true = y_true.astype(np.int64)
    return compute_report(y_true, y_pred, model.TASK_KIND, dataset.vocabulary.names)


def _metric_snapshot(report: MetricReport, train_loss: float) -> dict:
    return {
        "train_loss": train_loss,
        report.accuracy_name: report.accuracy,
        "micro_f1": report.micro_f1,
        "macro_f1": report.macro_f1,
    }


def train_and_evaluate(
    model,
    train_dataset,
    val_dataset,
    epochs: int,
    model_directory,
    run_id: str = "1",
) -> TrainingHistory:
    """Trains for ``epochs`` epochs, evaluating and checkpointing each one.

    Writes ``events.jsonl`` (per-batch train/loss, per-epoch validation
    metrics), one checkpoint per epoch and a ``best`` checkpoint holding the
    highest primary validation metric (ties keep the earlier epoch).
    """
    for name, ds in (("train", train_dataset), ("val", val_dataset)):
        if ds.num_classes != model.num_classes:
            raise ConfigMismatch(
                f"{name} dataset has {ds.num_classes} classes, "
                f"model expects {model.num_classes}"
            )
    if model.net is None:
        model.prepare()
    if model.has_default_class_names:
        model.set_class_names(train_dataset.vocabulary.names)

    run_dir = os.path.join(os.fspath(model_directory), str(run_id))
    os.makedirs(run_dir, exist_ok=True)
    optimizer = Adam(model.learning_rate)
    records: list[EpochRecord] = []
    best_metric, best_epoch = -np.inf, 0
    global_step = 0

    with EventLogWriter(os.path.join(run_dir, "events.jsonl"), mode="w") as events:
        for epoch in range(1, epochs + 1):
            started = time.perf_counter()
            batch_losses = []
            for batch in train_dataset.iterate_batches(epoch=epoch):
                logits = model.forward(batch.images)
                loss, grad = loss_and_grad(logits, batch.targets, model.TASK_KIND)
                model.backward(grad)
                optimizer.step(model.parameters(), model.gradients())
                global_step += 1
                events.log(run_id, global_step, epoch, "train/loss", loss)
                batch_losses.append(loss)
            train_loss = float(np.mean(batch_losses))

            report = evaluate_model(model, val_dataset)
            wall = time.perf_counter() - started
            events.log(run_id, epoch, epoch, "train/epoch_loss", train_loss)
            events.log(run_id, epoch, epoch, f"val/{report.accuracy_name}", report.accuracy)
            events.log(run_id, epoch, epoch, "val/micro_f1", report.micro_f1)
            events.log(run_id, epoch, epoch, "val/macro_f1", report.macro_f1)

            snapshot = _metric_snapshot(report, train_loss)
            save_checkpoint(
                model,
                checkpoint_path(model_directory, run_id, epoch),
                epoch=epoch,
                run_id=run_id,
                metrics=snapshot,
            )
            metric_name, metric_value = report.primary_metric
            if metric_value > best_metric:
                best_metric, best_epoch = metric_value, epoch
                best_dir = checkpoint_path(model_directory, run_id, "best")
                if os.path.isdir(best_dir):
                    shutil.rmtree(best_dir)
                shutil.copytree(checkpoint_path(model_directory, run_id, epoch), best_dir)
            records.append(EpochRecord(epoch, train_loss, wall, report))
            logger.info(
                "epoch %d/%d: train_loss=%.5f %s=%.4f (%.1fs)",
                epoch,
                epochs,
                train_loss,
                metric_name,
                metric_value,
                wall,
            )

    return TrainingHistory(records=tuple(records), best_epoch=best_epoch, run_dir=run_dir)
