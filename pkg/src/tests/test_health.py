import pytest


def test_healthchecks(client):
    response = client.get("/status/health/")
    assert response.status_code == 200


def test_healthchecks_broken_rules(client, settings, files_dir):
    """A rule file that can't be loaded makes the service unhealthy."""
    settings.THO_GENRE_RULES_FILE = files_dir / "genre_rules_invalid.yaml"
    response = client.get("/status/health/")
    assert response.status_code == 503


def test_runtime_error(client):
    with pytest.raises(RuntimeError):
        client.get("/500-test/")


def test_runtime_error_status_code(client):
    client.raise_request_exception = False
    response = client.get("/500-test/")
    assert response.status_code == 500
