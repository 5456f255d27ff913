"""Shared test utilities: random AST generation and corpus loading."""

import random
from pathlib import Path

from caddy.commands import Carry, GoDown, GoTo, GoUp, Mosaic, Photo
from caddy.tokens import GestureToken, token_from_mnemonic

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = Path(__file__).resolve().parent / "data"
SCENARIO_DIR = REPO_ROOT / "scenarios"


def random_command(rng: random.Random):
    """Uniformly random valid command AST."""
    pick = rng.randrange(6)
    if pick == 0:
        return Mosaic(rng.randint(1, 999), rng.randint(1, 999))
    if pick == 1:
        return Photo(rng.choice([None, rng.randint(1, 999)]))
    if pick == 2:
        return GoDown(rng.randint(1, 999))
    if pick == 3:
        return GoUp(rng.randint(1, 999))
    if pick == 4:
        return GoTo(rng.choice([GestureToken.BOAT, GestureToken.HERE]))
    return Carry(GestureToken.EQUIPMENT, rng.choice([GestureToken.BOAT, GestureToken.HERE]))


def load_golden_corpus():
    """Parse the golden phrase corpus into (tokens, expected) pairs.

    expected is ("ok", canonical_text) or ("err", code, position).
    """
    entries = []
    for raw in (DATA_DIR / "golden_phrases.txt").read_text().splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        lhs, rhs = line.split("=>")
        tokens = [token_from_mnemonic(m) for m in lhs.split()]
        parts = rhs.split()
        if parts[0] == "ok":
            entries.append((tokens, ("ok", " ".join(parts[1:]))))
        else:
            code, pos = parts[1].split("@")
            entries.append((tokens, ("err", code, int(pos))))
    return entries
