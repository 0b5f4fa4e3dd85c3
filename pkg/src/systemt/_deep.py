"""Run recursive tree walks on a thread with a large C stack.

Unary numerals are nested applications thousands of levels deep, and every
structural pass over terms is recursive.  CPython 3.10 keeps one C frame per
Python call, so the default 8 MiB main-thread stack is not enough.
"""

from __future__ import annotations

import functools
import sys
import threading

STACK_BYTES = 1 << 30
RECURSION_LIMIT = 2_000_000

_local = threading.local()
_lock = threading.Lock()


def deep(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        if getattr(_local, "active", False):
            return fn(*args, **kwargs)
        box: dict = {}

        def run():
            _local.active = True
            try:
                box["value"] = fn(*args, **kwargs)
            except BaseException as exc:  # re-raised on the caller's thread
                box["error"] = exc

        with _lock:
            if sys.getrecursionlimit() < RECURSION_LIMIT:
                sys.setrecursionlimit(RECURSION_LIMIT)
            old = threading.stack_size(STACK_BYTES)
            try:
                worker = threading.Thread(target=run, name=f"deep:{fn.__name__}")
                worker.start()
            finally:
                threading.stack_size(old)
        worker.join()
        if "error" in box:
            raise box["error"]
        return box["value"]

    return wrapper
