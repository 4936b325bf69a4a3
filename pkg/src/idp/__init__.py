"""Exact computations with i-divided powers of U_q(sl_2)."""

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memo table (used to time computations from a cold start)."""
    from . import genk, idivided, ipolys, pbw, qarith, repmod

    for mod in (qarith, pbw, ipolys, idivided, repmod, genk):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()
