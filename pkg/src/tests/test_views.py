import orjson
import pytest
from django.urls import reverse


def _post(api_client, name, data):
    response = api_client.post(reverse(f"prosody:{name}"), data, format="json")
    return response, orjson.loads(response.content)


class TestScoreView:
    """Prove the score endpoint."""

    def test_score(self, api_client, kieu_text):
        response, data = _post(api_client, "score", {"text": kieu_text})
        assert response.status_code == 200, data
        assert data == {
            "L": 1.0,
            "T": 1.0,
            "R": 1.0,
            "score": 1.0,
            "genre": "luc_bat",
            "n": 2,
            "flags": [],
        }

    def test_explicit_genre(self, api_client, kieu_text):
        response, data = _post(api_client, "score", {"text": kieu_text, "genre": "7 chu"})
        assert response.status_code == 200, data
        assert data["genre"] == "chu_7"
        assert data["L"] == 0.0

    def test_unknown_genre(self, api_client):
        response, data = _post(api_client, "score", {"text": "một hai ba"})
        assert response.status_code == 200, data
        assert data["score"] == 0.0
        assert data["flags"] == ["unknown_genre"]

    def test_empty_poem(self, api_client):
        """Prove that toolkit errors are reported as problem+json."""
        response, data = _post(api_client, "score", {"text": " ... \n"})
        assert response.status_code == 400, data
        assert response["content-type"] == "application/problem+json"
        assert data == {
            "type": "urn:apiexception:empty_poem",
            "title": "Poem has no lines",
            "detail": "Poem has no lines",
            "status": 400,
            "instance": "http://testserver/v1/prosody/score/",
        }

    def test_invalid_input(self, api_client):
        response, data = _post(api_client, "score", {"genre": "haiku"})
        assert response.status_code == 400, data
        assert data["type"] == "urn:apiexception:invalid"
        assert {param["name"] for param in data["invalid-params"]} == {"text", "genre"}
        assert data["x-validation-errors"]["genre"] == ["Unknown genre 'haiku'."]

    def test_get_not_allowed(self, api_client):
        response = api_client.get(reverse("prosody:score"))
        assert response.status_code == 405


class TestClassifyView:
    @pytest.mark.parametrize(
        ["text", "genre", "signature"],
        [
            ("Trăm năm trong cõi người ta\nChữ tài chữ mệnh khéo là ghét nhau", "luc_bat", "6 8"),
            ("một hai ba bốn năm\nsáu bảy tám chín mười", "chu_5", "5 5"),
            ("một hai ba", "unknown", "3"),
        ],
    )
    def test_classify(self, api_client, text, genre, signature):
        response, data = _post(api_client, "classify", {"text": text})
        assert response.status_code == 200, data
        assert data["genre"] == genre
        assert data["signature"] == signature

    def test_min_fit_setting(self, api_client, settings):
        seven = "một hai ba bốn năm sáu bảy"
        text = "\n".join([seven, seven, seven, "một hai ba bốn năm"])
        response, data = _post(api_client, "classify", {"text": text})
        assert data == {"genre": "unknown", "fit": 0.75, "signature": "7 7 7 5"}

        settings.THO_CLASSIFIER_MIN_FIT = 0.5
        response, data = _post(api_client, "classify", {"text": text})
        assert data["genre"] == "chu_7"


def test_not_found(api_client):
    response = api_client.get("/v1/prosody/nothing/")
    assert response.status_code == 404
    assert orjson.loads(response.content)["title"] == "Not Found (404)"


def test_multiple_slashes(api_client):
    response = api_client.get("/v1/prosody//score/")
    assert response.status_code == 404
    assert orjson.loads(response.content)["title"] == "Multiple slashes not supported"
