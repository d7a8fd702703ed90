"""
Reproducing the searches
========================

Each search runs over outer units (pairs, indices i, odd k) and can be
checkpointed and resumed. Set DIOPHLAB_WORKERS or pass ``workers=`` to use a
process pool; results do not depend on the worker count.
"""
import tempfile
from pathlib import Path

from diophlab import search_family_k, search_fourth_n, search_s2p

rep = search_s2p(1000, 1000, 10**6)
for hit in rep.hits:
    print(hit["triple"], hit["point"], hit["x"])
print(rep.counters)

# Dropping the a+b+c even requirement exposes integral S+2P points whose
# triples lack an integral 2P
everything = search_s2p(1000, 1000, 10**6, require_2p_integral=False)
print(len(everything.hits))

rep = search_fourth_n(200)
print([(h["i"], h["extra_n"]) for h in rep.hits])

# Stop early, then resume from the checkpoint
ck = Path(tempfile.mkdtemp()) / "family_k.json"
part = search_family_k(101, 4, checkpoint=ck, stop_after=10)
print(part.cursor, part.complete)
done = search_family_k(101, 4, checkpoint=ck)
for hit in done.hits:
    print(hit["triple"], hit["n_values"])
