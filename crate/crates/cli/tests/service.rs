use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use rand::SeedableRng;
use revspy::family::Family;
use revspy::game::{play, vertices_from_counts, MoveSet, Phase, Position, ScriptedRev, ScriptedSpy, Transcript};
use revspy::revs::{BipartiteAttack, SwarmRev};
use revspy::spies::{BipartiteM2Spy, GreedyCoverSpy};
use revspy::{GameRng, GameSpec, RevStrategy, SpyStrategy, SpyTurn};
use revspy_cli::api::router;
use serde_json::{json, Value};
use std::sync::Arc;
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = req.body(body.map(|b| Body::from(b.to_string())).unwrap_or_else(Body::empty)).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn spec_of(graph: &str, m: u32, r: u32, s: u32) -> GameSpec {
    let g = graph.parse::<Family>().unwrap().build().unwrap();
    GameSpec::new(Arc::new(g), m, r, s).unwrap()
}

fn position(state: &Value) -> Position {
    serde_json::from_value(json!({
        "revs": state["revs"], "spies": state["spies"], "phase": state["phase"], "round": state["round"],
    }))
    .unwrap()
}

fn transcript(state: &Value) -> Transcript {
    serde_json::from_value(state["transcript"].clone()).unwrap()
}

fn new_session(graph: &str, m: u32, r: u32, s: u32, human: &str, ai: &str, seed: u64) -> Value {
    json!({ "graph": graph, "m": m, "r": r, "s": s, "human": human, "ai": ai, "seed": seed, "horizon": 40 })
}

#[tokio::test]
async fn creation_starts_in_placement() {
    let app = router();
    let (status, body) = call(&app, "POST", "/sessions", Some(new_session("bipartite:20,20", 3, 10, 5, "revolutionaries", "spy.bipartite-m3", 0))).await;
    assert_eq!(status, StatusCode::CREATED);
    let state = &body["state"];
    assert_eq!(state["phase"], "rev_placement");
    assert_eq!(state["status"], "awaiting_human");
    assert_eq!(state["to_move"], "revolutionaries");
    assert_eq!(state["schema_version"], 1);
    assert!(body.get("ai_reply").is_none());
    let id = state["id"].as_str().unwrap();
    let (status, again) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(&again, state);
}

#[tokio::test]
async fn illegal_move_leaves_state_unchanged() {
    let app = router();
    let (_, body) = call(&app, "POST", "/sessions", Some(new_session("cycle:6", 2, 3, 1, "revolutionaries", "spy.greedy-cover", 3))).await;
    let id = body["state"]["id"].as_str().unwrap().to_string();
    let uri = format!("/sessions/{id}/moves");
    let (status, placed) = call(&app, "POST", &uri, Some(json!({ "placement": [0, 2, 4] }))).await;
    assert_eq!(status, StatusCode::OK, "{placed}");
    assert_eq!(placed["ai_reply"]["placement"].as_array().unwrap().len(), 1);
    let before = placed["state"].clone();
    assert_eq!(before["phase"], "rev_to_move");

    for (flow, code) in [
        (json!([{ "from": 0, "to": 3, "count": 1 }]), "illegal_move"),
        (json!([{ "from": 1, "to": 2, "count": 1 }]), "illegal_move"),
        (json!([{ "from": 0, "to": 1, "count": 2 }]), "illegal_move"),
        (json!([{ "from": 0, "to": 99, "count": 1 }]), "illegal_move"),
    ] {
        let (status, err) = call(&app, "POST", &uri, Some(json!({ "moves": flow }))).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{err}");
        assert_eq!(err["code"], code, "{err}");
        assert!(err["message"].is_string());
        assert!(err["detail"]["from"].is_u64(), "{err}");
        let (_, now) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
        assert_eq!(now, before);
    }

    let (status, err) = call(&app, "POST", &uri, Some(json!({ "placement": [0, 1, 2] }))).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::CONFLICT, Some("wrong_phase")));
    let (status, err) = call(&app, "POST", &uri, Some(json!({ "placement": [0], "moves": [] }))).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::BAD_REQUEST, Some("bad_request")));
    let (status, err) = call(&app, "POST", &uri, Some(json!({ "shove": 1 }))).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::BAD_REQUEST, Some("parse_error")));
    let (_, now) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(now, before);
}

#[tokio::test]
async fn bad_requests_are_structured() {
    let app = router();
    let cases = [
        (new_session("nope:3", 2, 3, 1, "revolutionaries", "spy.random", 0), StatusCode::BAD_REQUEST, "parse_error"),
        (new_session("cycle:5", 2, 3, 1, "revolutionaries", "spy.nope", 0), StatusCode::BAD_REQUEST, "unknown_strategy"),
        (new_session("cycle:5", 2, 3, 1, "spies", "rev.retract-pullback", 0), StatusCode::UNPROCESSABLE_ENTITY, "strategy_mismatch"),
        (new_session("path:2", 2, 9, 1, "spies", "rev.random", 0), StatusCode::UNPROCESSABLE_ENTITY, "precondition"),
    ];
    for (req, status, code) in cases {
        let (got, err) = call(&app, "POST", "/sessions", Some(req)).await;
        assert_eq!((got, err["code"].as_str()), (status, Some(code)), "{err}");
        assert_eq!(err["schema_version"], 1);
    }
    let (status, err) = call(&app, "GET", "/sessions/s404", None).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::NOT_FOUND, Some("not_found")));
    let (status, err) = call(&app, "POST", "/sessions", None).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::BAD_REQUEST, Some("parse_error")));
}

#[tokio::test]
async fn strategies_are_listed() {
    let (status, body) = call(&router(), "GET", "/strategies", None).await;
    assert_eq!(status, StatusCode::OK);
    let ids: Vec<&str> = body["strategies"].as_array().unwrap().iter().map(|s| s["id"].as_str().unwrap()).collect();
    assert_eq!(ids.len(), 28);
    assert!(ids.contains(&"spy.webbed-tree") && ids.contains(&"rev.bipartite-m2"));
    assert!(body["families"].as_array().unwrap().iter().any(|f| f == "hypercube"));
}

/// The human plays the m = 2 attack below the threshold; the service must
/// report the win in the same round as an engine-only game and hand back a
/// transcript equal to `play` with the human moves scripted.
#[tokio::test]
async fn scripted_losing_line_matches_engine() {
    let (graph, m, r, seed) = ("bipartite:12,12", 2, 6, 5);
    let s = (7 * r / 2 - 3u32).div_ceil(5) - 1;
    let spec = spec_of(graph, m, r, s);
    let app = router();
    let (_, body) = call(&app, "POST", "/sessions", Some(new_session(graph, m, r, s, "revolutionaries", "spy.bipartite-m2", seed))).await;
    let id = body["state"]["id"].as_str().unwrap().to_string();
    let uri = format!("/sessions/{id}/moves");

    let mut attack = BipartiteAttack::m2();
    let mut rng = GameRng::seed_from_u64(999);
    let placement = vertices_from_counts(&attack.place(&spec, &mut rng).unwrap());
    let (_, mut step) = call(&app, "POST", &uri, Some(json!({ "placement": placement }))).await;
    let mut moves = Vec::new();
    while step["state"]["status"] == "awaiting_human" {
        let pos = position(&step["state"]);
        let mv = attack.respond(&spec, &pos, &mut rng).unwrap();
        moves.push(mv.clone());
        let (status, next) = call(&app, "POST", &uri, Some(json!({ "moves": mv.to_flows() }))).await;
        assert_eq!(status, StatusCode::OK, "{next}");
        step = next;
    }
    let state = &step["state"];
    assert_eq!(state["status"], "finished");
    assert_eq!(state["winner"], "revolutionaries");
    let served = transcript(state);

    let engine = play(&spec, &mut BipartiteAttack::m2(), &mut BipartiteM2Spy::new(), 40, seed);
    assert_eq!(served.outcome, engine.outcome);
    let round = state["outcome"]["round"].as_u64().unwrap();
    assert!(round <= 2, "{}", state["outcome"]);

    let scripted = play(&spec, &mut ScriptedRev::new(placement, moves), &mut BipartiteM2Spy::new(), 40, seed);
    assert_eq!(scripted.to_json(), served.to_json());
    assert_eq!(served.replay().unwrap().1, served.outcome);

    let (status, err) = call(&app, "POST", &uri, Some(json!({ "moves": [] }))).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::CONFLICT, Some("game_over")));
    let (status, err) = call(&app, "POST", &format!("/sessions/{id}/resign"), None).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::CONFLICT, Some("game_over")));
}

/// Human spies against a random-seeded AI attacker, played to the horizon.
#[tokio::test]
async fn human_spies_match_engine() {
    let (graph, m, r, s, seed) = ("bipartite:8,8", 2, 4, 3, 11);
    let spec = spec_of(graph, m, r, s);
    let app = router();
    let (status, body) = call(&app, "POST", "/sessions", Some(new_session(graph, m, r, s, "spies", "rev.swarm", seed))).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    assert_eq!(body["state"]["phase"], "spy_placement");
    let id = body["state"]["id"].as_str().unwrap().to_string();
    let uri = format!("/sessions/{id}/moves");

    let mut spy = GreedyCoverSpy;
    let mut rng = GameRng::seed_from_u64(0);
    let revs: Vec<u32> = serde_json::from_value(body["state"]["revs"].clone()).unwrap();
    let placement = vertices_from_counts(&spy.place(&spec, &revs, &mut rng).unwrap());
    let (_, mut step) = call(&app, "POST", &uri, Some(json!({ "placement": placement }))).await;
    let mut start = position(&step["state"]);
    start.phase = Phase::RevToMove;
    let mut moves = Vec::new();
    while step["state"]["status"] == "awaiting_human" {
        let current = position(&step["state"]);
        assert_eq!(current.phase, Phase::SpyToMove);
        let rev_move: MoveSet = serde_json::from_value::<Vec<revspy::game::Flow>>(step["ai_reply"]["moves"].clone()).unwrap().into();
        let turn = SpyTurn { start: &start, rev_move: &rev_move, current: &current };
        let mv = spy.respond(&spec, &turn, &mut rng).unwrap();
        moves.push(mv.clone());
        let (status, next) = call(&app, "POST", &uri, Some(json!({ "moves": mv.to_flows() }))).await;
        assert_eq!(status, StatusCode::OK, "{next}");
        start = current.clone();
        start.spies = mv.apply_to(&current.spies);
        start.phase = Phase::RevToMove;
        step = next;
    }
    let served = transcript(&step["state"]);
    let scripted = play(&spec, &mut SwarmRev, &mut ScriptedSpy::new(placement, moves), 40, seed);
    assert_eq!(scripted.to_json(), served.to_json());
    assert_eq!(served.replay().unwrap().1, served.outcome);
}

#[tokio::test]
async fn sessions_are_independent_and_resignable() {
    let app = router();
    let mk = || new_session("star:4", 2, 3, 1, "revolutionaries", "spy.dominating-vertex", 0);
    let (_, a) = call(&app, "POST", "/sessions", Some(mk())).await;
    let (_, b) = call(&app, "POST", "/sessions", Some(mk())).await;
    let (a, b) = (a["state"]["id"].as_str().unwrap().to_string(), b["state"]["id"].as_str().unwrap().to_string());
    assert_ne!(a, b);
    let (status, _) = call(&app, "POST", &format!("/sessions/{a}/moves"), Some(json!({ "placement": [1, 2, 3] }))).await;
    assert_eq!(status, StatusCode::OK);
    let (_, sb) = call(&app, "GET", &format!("/sessions/{b}"), None).await;
    assert_eq!(sb["phase"], "rev_placement");
    let (status, resigned) = call(&app, "POST", &format!("/sessions/{a}/resign"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!((resigned["status"].as_str(), resigned["winner"].as_str()), (Some("resigned"), Some("spies")));
    let (status, _) = call(&app, "POST", &format!("/sessions/{a}/moves"), Some(json!({ "moves": [] }))).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn spy_placement_meeting_ends_at_once() {
    let app = router();
    let (_, body) = call(&app, "POST", "/sessions", Some(new_session("path:4", 2, 2, 1, "revolutionaries", "spy.random", 0))).await;
    let id = body["state"]["id"].as_str().unwrap().to_string();
    let (_, step) = call(&app, "POST", &format!("/sessions/{id}/moves"), Some(json!({ "placement": [1, 1] }))).await;
    let state = &step["state"];
    let t = transcript(state);
    assert_eq!(t.replay().unwrap().1, t.outcome);
    if state["status"] == "finished" {
        assert_eq!(state["outcome"]["round"], 0);
    } else {
        assert_eq!(state["spies"][1], 1);
    }
}
