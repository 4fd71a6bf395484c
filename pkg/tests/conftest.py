import pytest

from ovalcodes import create_app
from ovalcodes.gf2m import field_new
from ovalcodes.opoly import segre


@pytest.fixture
def gf8():
    return field_new(3)


@pytest.fixture
def gf16():
    return field_new(4)


@pytest.fixture
def gf32():
    return field_new(5)


@pytest.fixture
def gf64():
    return field_new(6)


@pytest.fixture
def segre3():
    return segre(3)


@pytest.fixture
def app():
    return create_app({"TESTING": True, "ENUMERATION_BUDGET": 2 ** 24, "WORKERS": 2})


@pytest.fixture
def client(app):
    return app.test_client()
