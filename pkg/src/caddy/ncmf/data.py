"""Dataset file I/O, synthetic benchmark generation and model persistence.

Dataset format: header line `M D_0 D_1 ... D_{M-1}`, then one sample per
line: `label v0 v1 ...` with the M descriptor vectors concatenated,
space-separated decimal.
"""

import json

import numpy as np

from .forest import DescriptorSample, Forest, ForestParams, Leaf, NcmNode


def load_dataset(path):
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if not header:
            raise ValueError("missing dataset header")
        m = int(header[0])
        if len(header) != m + 1:
            raise ValueError(f"header promises {m} descriptor dims, got {len(header) - 1}")
        dims = [int(x) for x in header[1:]]
        total = sum(dims)
        samples = []
        for lineno, line in enumerate(fh, start=2):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != total + 1:
                raise ValueError(f"line {lineno}: expected {total + 1} fields, got {len(parts)}")
            label = int(parts[0])
            values = np.array([float(x) for x in parts[1:]])
            descriptors = []
            offset = 0
            for d in dims:
                descriptors.append(values[offset:offset + d])
                offset += d
            samples.append(DescriptorSample(label, descriptors))
    return samples


def save_dataset(path, samples):
    dims = [len(d) for d in samples[0].descriptors]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(" ".join([str(len(dims))] + [str(d) for d in dims]) + "\n")
        for s in samples:
            flat = np.concatenate(s.descriptors)
            fh.write(" ".join([str(int(s.label))] + [repr(float(v)) for v in flat]) + "\n")


def gaussian_benchmark(
    n_classes: int = 4,
    n_per_class: int = 125,
    descriptor_dims=(2, 3),
    separation: float = 6.0,
    seed: int = 0,
):
    """Unit-variance Gaussian blobs whose class means sit on hypercube corners.

    Adjacent corners are `separation` apart, so with sigma = 1 the blobs are
    separation-sigma separated in every descriptor space.
    """
    for d in descriptor_dims:
        if n_classes > 2 ** d:
            raise ValueError(f"{n_classes} classes need descriptor dim >= log2(n_classes)")
    rng = np.random.default_rng(seed)
    samples = []
    for c in range(n_classes):
        means = [
            separation * np.array([(c >> b) & 1 for b in range(d)], dtype=float)
            for d in descriptor_dims
        ]
        for _ in range(n_per_class):
            samples.append(
                DescriptorSample(c, [mu + rng.standard_normal(len(mu)) for mu in means])
            )
    return samples


# ---------------------------------------------------------------------------
# Model persistence (deterministic JSON)


def _node_to_dict(node):
    if isinstance(node, Leaf):
        return {
            "hist": node.histogram.tolist(),
            "n": node.n_samples,
            "depth": node.depth,
            "pure": node.pure,
        }
    return {
        "m": node.descriptor_index,
        "classes": node.centroid_classes.tolist(),
        "centroids": node.centroids.tolist(),
        "children": [_node_to_dict(c) for c in node.children],
    }


def _node_from_dict(d):
    if "hist" in d:
        return Leaf(np.array(d["hist"]), d["n"], d["depth"], d["pure"])
    return NcmNode(
        d["m"],
        np.array(d["classes"], dtype=np.int64),
        np.array(d["centroids"]),
        [_node_from_dict(c) for c in d["children"]],
    )


def save_model(path, forest: Forest):
    doc = {
        "classes": forest.classes.tolist(),
        "descriptor_dims": list(forest.descriptor_dims),
        "params": {
            "n_trees": forest.params.n_trees,
            "max_depth": forest.params.max_depth,
            "min_leaf": forest.params.min_leaf,
            "k": forest.params.k,
            "seed": forest.params.seed,
        },
        "trees": [_node_to_dict(t) for t in forest.trees],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, separators=(",", ":"))


def load_model(path) -> Forest:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    params = ForestParams(**doc["params"])
    return Forest(
        np.array(doc["classes"], dtype=np.int64),
        tuple(doc["descriptor_dims"]),
        params,
        [_node_from_dict(t) for t in doc["trees"]],
    )
