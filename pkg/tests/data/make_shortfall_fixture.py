"""Regenerate shortfall_fixture.json: 50 random games with profiles, and the
brute-force global shortfalls under the uniform tremble.

Run from the tests directory:  python3 data/make_shortfall_fixture.py
"""

import json
import math
import random
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))

from gamegen import improved_profile, random_game, random_profile  # noqa: E402
from oracles import brute_global_shortfall, later_sets  # noqa: E402

from ckrverify import serialize as ser  # noqa: E402
from ckrverify.strategy import uniform_tremble  # noqa: E402

MAX_CONTINUATIONS = 5000


def main():
    rng = random.Random(20240607)
    entries = []
    while len(entries) < 50:
        g = random_game(rng)
        sigma = random_profile(rng, g)
        if len(entries) % 2:
            sigma = improved_profile(g, sigma)
        work = sum(math.prod(len(g.infosets[J].actions) for J in later_sets(g, I)) for I in g.infosets)
        if not g.infosets or work > MAX_CONTINUATIONS:
            continue
        trem = uniform_tremble(sigma)
        expected = {I: ser.nonstd_to_json(brute_global_shortfall(g, s.player, I, sigma[s.player], trem))
                    for I, s in g.infosets.items()}
        entries.append({"game": ser.game_to_json(g), "profile": ser.behavioral_to_json(sigma),
                        "global_shortfall": expected})
    (HERE / "shortfall_fixture.json").write_text(ser.dumps(entries))


if __name__ == "__main__":
    main()
