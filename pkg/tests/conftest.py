from __future__ import annotations

import os
import sys
from functools import lru_cache

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from cayleyauto.groups import corpus, corpus_all  # noqa: E402
from cayleyauto.kernel import build_kernel_graph  # noqa: E402
from cayleyauto.rational import L_multivariate, L_univariate  # noqa: E402

CORPUS = list(corpus_all())


@lru_cache(maxsize=None)
def graph_of(name: str, order: str = "bfs"):
    return build_kernel_graph(corpus(name), order=order)


@lru_cache(maxsize=None)
def univariate(name: str):
    return L_univariate(graph_of(name))


@lru_cache(maxsize=None)
def multivariate(name: str):
    return L_multivariate(graph_of(name))


@pytest.fixture(params=CORPUS)
def corpus_name(request):
    return request.param
