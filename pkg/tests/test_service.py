import pytest
from fastapi.testclient import TestClient

from adaptlift.demo import write_demo_corpus
from adaptlift.service import build_store, create_app
from adaptlift.template import template_stats


@pytest.fixture(scope="module")
def client(tmp_path_factory):
    data_dir = tmp_path_factory.mktemp("demo-data")
    write_demo_corpus(data_dir)
    store = build_store(data_dir)
    return TestClient(create_app(store)), store


def test_list_examples(client):
    api, store = client
    resp = api.get("/examples")
    assert resp.status_code == 200
    rows = resp.json()
    assert [r["id"] for r in rows] == sorted(store.templates)
    for row in rows:
        stats = template_stats(store.templates[row["id"]])
        assert row["hotspot_count"] == stats["hotspot_count"]
        assert row["counterparts"] == len(store.templates[row["id"]].counterparts)


def test_get_template_consistent_with_stats(client):
    api, store = client
    for eid in store.templates:
        doc = api.get(f"/examples/{eid}/template").json()
        assert len(doc["hotspots"]) == template_stats(store.templates[eid])["hotspot_count"]
        stars = [c["stars"] for c in doc["counterparts"]]
        assert stars == sorted(stars, reverse=True)


def test_unknown_example_404(client):
    api, _ = client
    assert api.get("/examples/nope/template").status_code == 404
    assert api.post("/sessions", json={"example_id": "nope"}).status_code == 404


def test_session_lifecycle_select_undo_render(client):
    api, store = client
    eid = sorted(store.templates)[0]
    sid = api.post("/sessions", json={"example_id": eid}).json()["session_id"]

    baseline = api.get(f"/sessions/{sid}")
    assert baseline.status_code == 200
    render0 = api.get(f"/sessions/{sid}/render")
    assert render0.text == store.templates[eid].example_text

    template = store.templates[eid]
    target = None
    for hi, hs in enumerate(template.hotspots):
        if len(hs.options) > 1:
            target = (hi, 1)
            break
    assert target is not None, "demo template should have options"

    view1 = api.post(
        f"/sessions/{sid}/select", json={"hotspot": target[0], "option": target[1]}
    )
    assert view1.status_code == 200
    body = view1.json()
    opt = template.hotspots[target[0]].options[target[1]]
    assert set(body["active_counterparts"]) == set(opt.contributors)
    assert body["chosen"][str(target[0])] == target[1]

    undo_view = api.post(f"/sessions/{sid}/undo")
    assert undo_view.status_code == 200
    assert undo_view.json()["chosen"] == baseline.json()["chosen"]
    # byte-identical round trip apart from history depth bookkeeping
    again = api.get(f"/sessions/{sid}/render")
    assert again.text == render0.text


def test_select_then_undo_restores_byte_identical_view(client):
    api, store = client
    eid = sorted(store.templates)[0]
    sid = api.post("/sessions", json={"example_id": eid}).json()["session_id"]
    before = api.get(f"/sessions/{sid}").content
    api.post(f"/sessions/{sid}/select", json={"hotspot": 0, "option": 0})
    api.post(f"/sessions/{sid}/undo")
    # undo pops back to the initial state; the view is reconstructed from it
    after = api.get(f"/sessions/{sid}").content
    assert after == before


def test_unique_option_filters_counterparts(client):
    api, store = client
    for eid in sorted(store.templates):
        template = store.templates[eid]
        for hi, hs in enumerate(template.hotspots):
            for oi, opt in enumerate(hs.options):
                if oi and len(opt.contributors) == 1:
                    sid = api.post("/sessions", json={"example_id": eid}).json()[
                        "session_id"
                    ]
                    view = api.post(
                        f"/sessions/{sid}/select",
                        json={"hotspot": hi, "option": oi},
                    ).json()
                    assert view["active_counterparts"] == sorted(opt.contributors)
                    return
    pytest.skip("no unique option in demo data")


def test_error_codes(client):
    api, store = client
    eid = sorted(store.templates)[0]
    sid = api.post("/sessions", json={"example_id": eid}).json()["session_id"]
    # 404: unknown session, unknown hotspot/option ids
    assert api.post("/sessions/zzz/select", json={"hotspot": 0, "option": 0}).status_code == 404
    assert api.get("/sessions/zzz/render").status_code == 404
    assert (
        api.post(f"/sessions/{sid}/select", json={"hotspot": 99, "option": 0}).status_code
        == 404
    )
    assert (
        api.post(f"/sessions/{sid}/select", json={"hotspot": 0, "option": 99}).status_code
        == 404
    )
    # 410: undo on fresh session
    assert api.post(f"/sessions/{sid}/undo").status_code == 410


def test_reads_are_idempotent(client):
    api, store = client
    eid = sorted(store.templates)[0]
    a = api.get(f"/examples/{eid}/template").content
    b = api.get(f"/examples/{eid}/template").content
    assert a == b


def test_session_store_is_bounded(client):
    from adaptlift.service import MAX_SESSIONS

    api, store = client
    eid = sorted(store.templates)[0]
    first = api.post("/sessions", json={"example_id": eid}).json()["session_id"]
    for _ in range(MAX_SESSIONS):
        api.post("/sessions", json={"example_id": eid})
    assert api.get(f"/sessions/{first}").status_code == 404
