import pytest

from hopfpi import zoo


@pytest.fixture(scope="session")
def models():
    cache = {}

    def get(name):
        if name not in cache:
            model = zoo.load(name)
            cache[name] = (model.algebra, model.action())
        return cache[name]

    return get
