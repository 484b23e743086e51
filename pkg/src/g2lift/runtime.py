"""Chunked, checkpointed evaluation of the large tensor powers.

A stage computes T^(k+1) = T^k * T with the left operand's terms split into
deterministic chunks; chunk products merge by coefficient addition, which is
a commutative-monoid merge, so the result is independent of the partitioning
and of the worker count.  Stages are pickled under a content hash of the
task spec, making interrupted runs resumable with bit-identical results.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing as mp
import os
import pickle

from . import engine
from .engine import TensorElement, mul_tensor

_WORKER = {}


def task_hash(spec):
    return hashlib.sha256(
        json.dumps(spec, sort_keys=True).encode()).hexdigest()[:16]


def _chunks(items, k):
    n = len(items)
    size = (n + k - 1) // k
    return [items[i:i + size] for i in range(0, n, size)]


def _init_worker(session_spec):
    from .lifting import LiftingSession
    from .rootdata import BraidingConfig, DeformationParams
    cfg = BraidingConfig(session_spec["N"], session_spec["a"])
    params = DeformationParams(lam=tuple(session_spec["lam"]),
                               mu=tuple(session_spec["mu"]))
    ses = LiftingSession(cfg, params)
    kind = session_spec["map"]
    if kind == "delta":
        cmap = ses.delta()
    elif kind == "rho":
        from .lifting import rho_map
        cmap = rho_map(ses.cleft, ses.prenichols)
    else:
        from .structure import coproduct_map
        cmap = coproduct_map(ses.prenichols)
    _WORKER["algL"] = cmap.algL
    _WORKER["algR"] = cmap.algR


def _chunk_product(args):
    chunk, right = args
    return mul_tensor(_WORKER["algL"], _WORKER["algR"], dict(chunk), right)


def staged_power(cmap, rank, n, jobs=1, ckpt_dir=None, tag="",
                 session_spec=None, log=None):
    """T^n for T = cmap.letter_images[rank], stage by stage."""
    f = cmap.algL.field
    T = cmap.letter_images[rank].terms

    def load(stage):
        if not ckpt_dir:
            return None
        path = os.path.join(ckpt_dir, f"{tag}-stage{stage}.pkl")
        if os.path.exists(path):
            with open(path, "rb") as fh:
                return pickle.load(fh)
        return None

    def save(stage, terms):
        if not ckpt_dir:
            return
        os.makedirs(ckpt_dir, exist_ok=True)
        path = os.path.join(ckpt_dir, f"{tag}-stage{stage}.pkl")
        tmp = path + ".tmp"
        with open(tmp, "wb") as fh:
            pickle.dump(terms, fh)
        os.replace(tmp, path)

    cur = dict(T)
    start = 1
    for stage in range(n, 1, -1):
        hit = load(stage)
        if hit is not None:
            cur = hit
            start = stage
            if log:
                log(f"resumed at stage {stage} ({len(cur)} terms)")
            break
    for stage in range(start + 1, n + 1):
        if jobs > 1 and len(cur) > 64 and session_spec is not None:
            items = sorted(cur.items())
            work = [(c, T) for c in _chunks(items, jobs)]
            with mp.Pool(jobs, initializer=_init_worker,
                         initargs=(session_spec,)) as pool:
                parts = pool.map(_chunk_product, work)
            out = {}
            for part in parts:
                for k, v in part.items():
                    engine._merge(out, k, v, f)
            cur = out
        else:
            cur = mul_tensor(cmap.algL, cmap.algR, cur, T)
        save(stage, cur)
        if log:
            log(f"stage {stage}/{n}: {len(cur)} terms")
    return TensorElement(cmap.algL, cmap.algR, cur)
