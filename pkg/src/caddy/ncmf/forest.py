"""Multi-descriptor nearest-class-mean forest.

Each tree node draws one descriptor index and a class subset, computes the
per-class means of that descriptor over the node's samples, and routes by
nearest mean (squared Euclidean, ties toward the lowest class id). Leaves
hold normalized label histograms; the forest averages the reached leaves.
"""

from dataclasses import dataclass

import numpy as np

from .routing import nearest_centroids


class DegenerateDataError(ValueError):
    """Training data with fewer than two classes."""


class ShapeMismatchError(ValueError):
    """Sample descriptors do not match the training layout."""


@dataclass(frozen=True, eq=False)
class DescriptorSample:
    """One sample: M descriptor vectors, optionally labeled."""

    label: int | None
    descriptors: tuple

    def __init__(self, label, descriptors):
        object.__setattr__(self, "label", label)
        object.__setattr__(
            self,
            "descriptors",
            tuple(np.asarray(d, dtype=np.float64).reshape(-1) for d in descriptors),
        )


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 8
    max_depth: int = 6
    min_leaf: int = 1
    k: int = 3  # classes per node
    seed: int = 0

    def __post_init__(self):
        if self.n_trees < 1 or self.max_depth < 1 or self.min_leaf < 1:
            raise ValueError("n_trees, max_depth and min_leaf must be positive")
        if self.k < 2:
            raise ValueError("k must be >= 2")


@dataclass
class NcmNode:
    """Internal node: descriptor choice, class centroids and one child each."""

    descriptor_index: int
    centroid_classes: np.ndarray  # class ids, ascending
    centroids: np.ndarray  # (c, D_m)
    children: list


@dataclass
class Leaf:
    histogram: np.ndarray  # over forest.classes, sums to 1
    n_samples: int
    depth: int
    pure: bool


@dataclass
class Forest:
    classes: np.ndarray  # sorted class ids
    descriptor_dims: tuple
    params: ForestParams
    trees: list


def _stack_dataset(dataset):
    if not dataset:
        raise DegenerateDataError("empty dataset")
    dims = tuple(len(d) for d in dataset[0].descriptors)
    mats = [np.empty((len(dataset), d)) for d in dims]
    labels = np.empty(len(dataset), dtype=np.int64)
    for i, sample in enumerate(dataset):
        if sample.label is None:
            raise ValueError("training samples must be labeled")
        if tuple(len(d) for d in sample.descriptors) != dims:
            raise ShapeMismatchError(
                f"sample {i} descriptor dims {tuple(len(d) for d in sample.descriptors)}"
                f" != {dims}"
            )
        for m, vec in enumerate(sample.descriptors):
            if not np.isfinite(vec).all():
                raise ValueError(f"sample {i} descriptor {m} has non-finite entries")
            mats[m][i] = vec
        labels[i] = sample.label
    return mats, labels, dims


def _leaf(labels, classes, depth):
    hist = np.zeros(len(classes))
    idx = np.searchsorted(classes, labels)
    np.add.at(hist, idx, 1.0)
    hist /= hist.sum()
    return Leaf(hist, len(labels), depth, len(np.unique(labels)) == 1)


def _build_node(mats, labels, idx, depth, params, rng, classes):
    node_labels = labels[idx]
    present = np.unique(node_labels)
    if len(present) == 1 or depth >= params.max_depth or len(idx) <= params.min_leaf:
        return _leaf(node_labels, classes, depth)
    m = int(rng.integers(len(mats)))
    count = min(params.k, len(present))
    chosen = np.sort(rng.choice(present, size=count, replace=False))
    centroids = np.stack(
        [mats[m][idx[node_labels == c]].mean(axis=0) for c in chosen]
    )
    assign = nearest_centroids(mats[m][idx], centroids)
    groups = [idx[assign == j] for j in range(len(chosen))]
    keep = [j for j, g in enumerate(groups) if len(g)]
    if len(keep) < 2 or any(len(groups[j]) < params.min_leaf for j in keep):
        return _leaf(node_labels, classes, depth)
    children = [
        _build_node(mats, labels, groups[j], depth + 1, params, rng, classes)
        for j in keep
    ]
    return NcmNode(m, chosen[keep], centroids[keep], children)


def train(dataset, params: ForestParams) -> Forest:
    """Train n_trees NCM trees; per-tree randomness is seeded as seed + tree index."""
    mats, labels, dims = _stack_dataset(dataset)
    classes = np.unique(labels)
    if len(classes) < 2:
        raise DegenerateDataError(f"need >= 2 classes, got {len(classes)}")
    trees = []
    all_idx = np.arange(len(labels))
    for t in range(params.n_trees):
        rng = np.random.default_rng(params.seed + t)
        trees.append(_build_node(mats, labels, all_idx, 0, params, rng, classes))
    return Forest(classes, dims, params, trees)


def _check_sample(forest, sample):
    dims = tuple(len(d) for d in sample.descriptors)
    if dims != tuple(forest.descriptor_dims):
        raise ShapeMismatchError(
            f"descriptor dims {dims} != trained {tuple(forest.descriptor_dims)}"
        )


def _route(node, sample):
    while isinstance(node, NcmNode):
        point = sample.descriptors[node.descriptor_index][None, :]
        j = int(nearest_centroids(point, node.centroids)[0])
        node = node.children[j]
    return node.histogram


def predict(forest: Forest, sample: DescriptorSample):
    """Returns (class id, posterior over forest.classes); ties -> lowest class id."""
    _check_sample(forest, sample)
    posterior = np.zeros(len(forest.classes))
    for tree in forest.trees:
        posterior += _route(tree, sample)
    posterior /= len(forest.trees)
    return int(forest.classes[int(posterior.argmax())]), posterior


def predict_batch(forest: Forest, samples):
    """Labels for many samples (posterior discarded)."""
    return np.array([predict(forest, s)[0] for s in samples], dtype=np.int64)


def nearest_class_mean(dataset, sample, descriptor_index: int) -> int:
    """Brute-force nearest-class-mean oracle over one descriptor space.

    Deliberately independent of the forest routing: plain per-class means
    and a scan, ties toward the lowest class id.
    """
    by_class = {}
    for s in dataset:
        by_class.setdefault(s.label, []).append(s.descriptors[descriptor_index])
    query = np.asarray(sample.descriptors[descriptor_index], dtype=np.float64)
    best_class = None
    best_dist = None
    for c in sorted(by_class):
        mu = np.stack(by_class[c]).mean(axis=0)
        dist = float(((query - mu) ** 2).sum())
        if best_dist is None or dist < best_dist:
            best_dist = dist
            best_class = c
    return best_class
