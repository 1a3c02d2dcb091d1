"""Canonical event-sequence data model, validation, batching and splitting.

A sequence is a strictly increasing list of (time, type) events observed on
a window [0, t_obs], with a binary outcome label: label 1 sequences end with
the single adverse-event type, label 0 sequences never contain it. Times
are hours since the sequence origin. Type ids are contiguous integers
1..K_total; id 0 is reserved for padding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    BadRatios,
    DuplicateSequenceId,
    EmptyBatch,
    LabelMismatch,
    NonMonotoneTimes,
    ParseError,
    TooShort,
    UnknownType,
)

PAD_ID = 0
MIN_SEQUENCE_LENGTH = 2
DEFAULT_SPLIT_RATIOS = (0.70, 0.15, 0.15)


@dataclass(frozen=True)
class EventTypeCatalog:
    """Vocabulary of event types: amber flags plus exactly one adverse type.

    ``entries`` maps type id (contiguous 1..K_total) to a human-readable
    name. Id 0 is the padding token and is never a real type.
    """

    entries: Mapping[int, str]
    adverse_id: int

    def __post_init__(self):
        ids = sorted(self.entries)
        if not ids:
            raise ValueError("catalog must contain at least one event type")
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError(f"type ids must be contiguous 1..K, got {ids}")
        if self.adverse_id not in self.entries:
            raise ValueError(f"adverse_id {self.adverse_id} not in catalog")

    @property
    def k_total(self) -> int:
        return len(self.entries)

    @property
    def pad_id(self) -> int:
        return PAD_ID

    def amber_ids(self) -> list[int]:
        return [k for k in sorted(self.entries) if k != self.adverse_id]

    @classmethod
    def synthetic(cls, k_total: int, adverse_id: int | None = None) -> "EventTypeCatalog":
        """Generic catalog for simulated cohorts; adverse defaults to the last id."""
        adverse = k_total if adverse_id is None else adverse_id
        entries = {
            k: ("adverse_event" if k == adverse else f"amber_flag_{k:02d}")
            for k in range(1, k_total + 1)
        }
        return cls(entries=entries, adverse_id=adverse)


@dataclass(frozen=True)
class Event:
    """One typed event at time ``t`` (hours since sequence origin)."""

    t: float
    k: int

    def __post_init__(self):
        if self.t < 0:
            raise ValueError(f"event time must be >= 0, got {self.t}")
        if self.k < 1:
            raise ValueError(f"event type must be >= 1, got {self.k}")


@dataclass(frozen=True)
class EventSequence:
    """A labelled event sequence on the observation window [0, t_obs].

    Construction is deliberately light; full invariants (monotone times,
    known types, label consistency, minimum length) are enforced by
    :func:`validate_sequence` against a catalog.
    """

    seq_id: str
    label: int
    events: tuple[Event, ...]
    t_obs: float

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label}")
        if self.t_obs < 0:
            raise ValueError("t_obs must be >= 0")
        object.__setattr__(self, "events", tuple(self.events))

    def __len__(self) -> int:
        return len(self.events)

    def times(self) -> np.ndarray:
        return np.array([e.t for e in self.events], dtype=np.float64)

    def types(self) -> np.ndarray:
        return np.array([e.k for e in self.events], dtype=np.int64)


@dataclass(frozen=True)
class PaddedBatch:
    """Rectangular batch of sequences with padding and causality masks.

    times/types/seq_mask are (B, L); attn_mask is (L, L) lower-triangular
    (query position i may attend to source positions j <= i). Padded slots
    carry the row's last real time and type ``PAD_ID``; t_obs is the per-row
    observation-window end, needed so losses can integrate the tail interval
    after the last event.
    """

    times: np.ndarray
    types: np.ndarray
    seq_mask: np.ndarray
    attn_mask: np.ndarray
    t_obs: np.ndarray

    @property
    def batch_size(self) -> int:
        return int(self.times.shape[0])

    @property
    def max_len(self) -> int:
        return int(self.times.shape[1])

    def lengths(self) -> np.ndarray:
        return self.seq_mask.sum(axis=1).astype(np.int64)

    def n_real_events(self) -> int:
        return int(self.seq_mask.sum())


@dataclass(frozen=True)
class SplitDataset:
    """Disjoint train/test/dev partition of a sequence collection."""

    train: tuple[EventSequence, ...]
    test: tuple[EventSequence, ...]
    dev: tuple[EventSequence, ...]
    split_seed: int = 0

    def __post_init__(self):
        for name in ("train", "test", "dev"):
            object.__setattr__(self, name, tuple(getattr(self, name)))


def validate_sequence(seq: EventSequence, catalog: EventTypeCatalog) -> EventSequence:
    """Check all sequence invariants against ``catalog``; return ``seq`` unchanged.

    Raises:
        TooShort: fewer than 2 events.
        NonMonotoneTimes: times not strictly increasing or beyond t_obs.
        UnknownType: a type id missing from the catalog.
        LabelMismatch: label inconsistent with adverse-event placement.
    """
    if len(seq) < MIN_SEQUENCE_LENGTH:
        raise TooShort(f"{seq.seq_id}: {len(seq)} events, need >= {MIN_SEQUENCE_LENGTH}")
    times = seq.times()
    if np.any(np.diff(times) <= 0):
        raise NonMonotoneTimes(f"{seq.seq_id}: event times must be strictly increasing")
    if times[-1] > seq.t_obs:
        raise NonMonotoneTimes(
            f"{seq.seq_id}: last event at {times[-1]} exceeds t_obs={seq.t_obs}"
        )
    for e in seq.events:
        if e.k not in catalog.entries:
            raise UnknownType(f"{seq.seq_id}: type {e.k} not in catalog")
    adverse_positions = [i for i, e in enumerate(seq.events) if e.k == catalog.adverse_id]
    if seq.label == 1:
        if adverse_positions != [len(seq) - 1]:
            raise LabelMismatch(
                f"{seq.seq_id}: label 1 requires exactly one terminal adverse event"
            )
    else:
        if adverse_positions:
            raise LabelMismatch(f"{seq.seq_id}: label 0 sequence contains an adverse event")
    return seq


def causal_mask(length: int) -> np.ndarray:
    """Lower-triangular (L, L) mask: entry [i, j] = 1 iff j <= i."""
    return np.tril(np.ones((length, length), dtype=np.float64))


def pad_batch(seqs: Sequence[EventSequence], catalog: EventTypeCatalog) -> PaddedBatch:
    """Rectangularise ``seqs`` by rear-padding to the longest length.

    Padding slots repeat the row's last real time (so temporal encodings
    never see negative gaps), carry type PAD_ID, and are mask 0.
    """
    if not seqs:
        raise EmptyBatch("cannot pad an empty list of sequences")
    lengths = [len(s) for s in seqs]
    max_len = max(lengths)
    batch = len(seqs)
    times = np.zeros((batch, max_len), dtype=np.float64)
    types = np.full((batch, max_len), catalog.pad_id, dtype=np.int64)
    mask = np.zeros((batch, max_len), dtype=np.float64)
    t_obs = np.zeros(batch, dtype=np.float64)
    for b, seq in enumerate(seqs):
        n = len(seq)
        times[b, :n] = seq.times()
        times[b, n:] = times[b, n - 1]
        types[b, :n] = seq.types()
        mask[b, :n] = 1.0
        t_obs[b] = seq.t_obs
    return PaddedBatch(
        times=times, types=types, seq_mask=mask, attn_mask=causal_mask(max_len), t_obs=t_obs
    )


def unpad_batch(batch: PaddedBatch) -> list[tuple[np.ndarray, np.ndarray]]:
    """Strip padding: per row, the (times, types) arrays of real events."""
    out = []
    for b in range(batch.batch_size):
        n = int(batch.seq_mask[b].sum())
        out.append((batch.times[b, :n].copy(), batch.types[b, :n].copy()))
    return out


def split_dataset(
    seqs: Sequence[EventSequence],
    ratios: tuple[float, float, float] = DEFAULT_SPLIT_RATIOS,
    seed: int = 0,
) -> SplitDataset:
    """Deterministically shuffle and partition into train/test/dev.

    Test and dev sizes are floor(n * ratio); the remainder goes to train.
    """
    r_train, r_test, r_dev = ratios
    if min(ratios) <= 0 or abs(sum(ratios) - 1.0) > 1e-9:
        raise BadRatios(f"ratios must be positive and sum to 1, got {ratios}")
    rng = np.random.Generator(np.random.PCG64(seed))
    order = rng.permutation(len(seqs))
    shuffled = [seqs[i] for i in order]
    n = len(shuffled)
    n_test = int(np.floor(n * r_test))
    n_dev = int(np.floor(n * r_dev))
    n_train = n - n_test - n_dev
    return SplitDataset(
        train=tuple(shuffled[:n_train]),
        test=tuple(shuffled[n_train : n_train + n_test]),
        dev=tuple(shuffled[n_train + n_test :]),
        split_seed=seed,
    )


def _format_time(t: float) -> float:
    # json round-trips Python floats via repr, which preserves the value
    # exactly (well beyond 9 significant digits)
    return float(t)


def write_sequences(seqs: Iterable[EventSequence], path) -> None:
    """Write sequences as line-delimited JSON records."""
    with open(path, "w", encoding="utf-8") as fh:
        for seq in seqs:
            record = {
                "seq_id": seq.seq_id,
                "label": seq.label,
                "t_obs": _format_time(seq.t_obs),
                "events": [[_format_time(e.t), e.k] for e in seq.events],
            }
            fh.write(json.dumps(record) + "\n")


def read_sequences(path) -> list[EventSequence]:
    """Read a line-delimited sequence file written by :func:`write_sequences`.

    Raises ParseError with the offending 1-based line number, and
    DuplicateSequenceId when the same seq_id appears twice.
    """
    seqs: list[EventSequence] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                seq = EventSequence(
                    seq_id=str(record["seq_id"]),
                    label=int(record["label"]),
                    events=tuple(Event(t=float(t), k=int(k)) for t, k in record["events"]),
                    t_obs=float(record["t_obs"]),
                )
            except (ValueError, KeyError, TypeError) as exc:
                raise ParseError(str(exc), line=lineno) from exc
            if seq.seq_id in seen:
                raise DuplicateSequenceId(f"duplicate seq_id {seq.seq_id!r} at line {lineno}")
            seen.add(seq.seq_id)
            seqs.append(seq)
    return seqs
