import json
import os
from functools import lru_cache

import pytest

from toricarr.characters import weyl_character_table
from toricarr.cohomology import equivariant_table
from toricarr.roots import build
from toricarr.weyl import conjugacy_classes, enumerate_group

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@lru_cache(maxsize=None)
def system(name):
    return build(name)


@lru_cache(maxsize=None)
def classes_of(name):
    return conjugacy_classes(enumerate_group(system(name)))


@lru_cache(maxsize=None)
def class_table(name):
    return equivariant_table(system(name), classes_of(name))


@lru_cache(maxsize=None)
def char_table(name):
    return weyl_character_table(classes_of(name))


@lru_cache(maxsize=None)
def published():
    with open(os.path.join(FIXTURES, "published.json")) as fh:
        return json.load(fh)


@pytest.fixture
def a2ex_path():
    return os.path.join(FIXTURES, "example_a2ex.json")
