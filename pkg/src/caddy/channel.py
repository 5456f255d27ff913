"""Noisy gesture channel standing in for the vision front-end.

A scripted true-gesture sequence is rendered into per-frame observations,
corrupted through a row-stochastic confusion matrix plus dropout, and
debounced back into discrete gesture events by consecutive-frame voting.
"""

from dataclasses import dataclass

import numpy as np

from .tokens import ALPHABET, GestureToken

# Channel-level label for frames with no detected hand. Kept out of the
# gesture alphabet; it exists only between renderer and debouncer.
NO_HAND = "no_hand"

# Label universe of the confusion matrix: every gesture token plus NO_HAND.
LABELS = tuple(ALPHABET) + (NO_HAND,)
N_LABELS = len(LABELS)
_LABEL_INDEX = {label: i for i, label in enumerate(LABELS)}


class MalformedMatrixError(ValueError):
    """A confusion row is not a probability distribution."""


@dataclass(frozen=True)
class FrameObservation:
    label: object  # GestureToken or NO_HAND
    confidence: float = 1.0


@dataclass(frozen=True)
class NoiseModel:
    """Row-stochastic confusion over LABELS plus frame dropout."""

    confusion: np.ndarray  # (N_LABELS, N_LABELS)
    dropout_p: float = 0.0
    seed: int = 0

    def validate(self):
        m = np.asarray(self.confusion, dtype=float)
        if m.shape != (N_LABELS, N_LABELS):
            raise MalformedMatrixError(
                f"confusion must be {N_LABELS}x{N_LABELS}, got {m.shape}"
            )
        if (m < 0).any():
            raise MalformedMatrixError("negative confusion entries")
        rowsum = m.sum(axis=1)
        if not np.allclose(rowsum, 1.0, atol=1e-9):
            raise MalformedMatrixError(f"rows must sum to 1, got {rowsum}")
        if not 0.0 <= self.dropout_p <= 1.0:
            raise MalformedMatrixError(f"dropout_p {self.dropout_p} outside [0, 1]")


def identity_confusion() -> np.ndarray:
    return np.eye(N_LABELS)


def symmetric_confusion(error_rate: float) -> np.ndarray:
    """Flip to any other label uniformly with probability error_rate."""
    if not 0.0 <= error_rate <= 1.0:
        raise MalformedMatrixError(f"error_rate {error_rate} outside [0, 1]")
    off = error_rate / (N_LABELS - 1)
    m = np.full((N_LABELS, N_LABELS), off)
    np.fill_diagonal(m, 1.0 - error_rate)
    return m


class NoisyChannel:
    """Streaming corruptor; one seeded RNG stream across successive calls."""

    def __init__(self, noise: NoiseModel):
        noise.validate()
        self.noise = noise
        self.rng = np.random.default_rng(noise.seed)
        cdf = np.cumsum(np.asarray(noise.confusion, dtype=float), axis=1)
        cdf[:, -1] = 1.0  # guard against cumsum rounding below 1
        self._cdf = cdf

    def corrupt(self, frames):
        n = len(frames)
        rows = np.array([_LABEL_INDEX[f.label] for f in frames], dtype=np.intp)
        # Fixed draw order (flips, dropout, confidences) keeps runs reproducible.
        u_flip = self.rng.random(n)
        u_drop = self.rng.random(n)
        u_conf = self.rng.random(n)
        sampled = (
            (u_flip[:, None] < self._cdf[rows]).argmax(axis=1)
            if n
            else np.zeros(0, dtype=int)
        )
        sampled[u_drop < self.noise.dropout_p] = _LABEL_INDEX[NO_HAND]
        out = []
        for i in range(n):
            label = LABELS[sampled[i]]
            if label == NO_HAND:
                out.append(FrameObservation(NO_HAND, 0.0))
            else:
                out.append(FrameObservation(label, 0.5 + 0.5 * u_conf[i]))
        return out


def corrupt(true_frames, noise: NoiseModel):
    """Resample each frame's label from its confusion row; seeded and reproducible."""
    return NoisyChannel(noise).corrupt(true_frames)


@dataclass(frozen=True)
class DebounceConfig:
    window_n: int = 5
    min_confidence: float = 0.6
    require_gap: bool = True

    def __post_init__(self):
        if self.window_n < 1:
            raise ValueError("window_n must be >= 1")
        if not 0.0 <= self.min_confidence <= 1.0:
            raise ValueError("min_confidence outside [0, 1]")


class Debouncer:
    """Emits one gesture event per window_n consecutive agreeing frames."""

    def __init__(self, cfg: DebounceConfig = None):
        self.cfg = cfg or DebounceConfig()
        self._run_label = None
        self._run_len = 0
        self._fired_since_gap = set()

    def reset(self):
        self._run_label = None
        self._run_len = 0
        self._fired_since_gap.clear()

    def push(self, frame: FrameObservation):
        """Feed one frame; returns the detected GestureToken or None."""
        if frame.label == NO_HAND:
            self._run_label = None
            self._run_len = 0
            self._fired_since_gap.clear()
            return None
        if frame.confidence < self.cfg.min_confidence:
            self._run_label = None
            self._run_len = 0
            return None
        if frame.label == self._run_label:
            self._run_len += 1
        else:
            self._run_label = frame.label
            self._run_len = 1
        if self._run_len != self.cfg.window_n:
            return None
        if self.cfg.require_gap and frame.label in self._fired_since_gap:
            return None
        self._fired_since_gap.add(frame.label)
        return frame.label


def render_gestures(tokens, frames_per_gesture: int, gap_frames: int):
    """True-frame stream for a scripted gesture sequence (NO_HAND gaps between)."""
    frames = []
    for tok in tokens:
        frames.extend(FrameObservation(tok, 1.0) for _ in range(frames_per_gesture))
        frames.extend(FrameObservation(NO_HAND, 0.0) for _ in range(gap_frames))
    return frames
