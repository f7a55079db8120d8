use std::collections::BTreeSet;

use ramsey_core::builder::{base_case_builder, budget, constructive_builder, lemma1_extend};
use ramsey_core::engine::{
    run_match, run_match_traced, BuilderSession, GameState, PainterSession, Status,
};
use ramsey_core::graph::{Color, TargetPair};
use ramsey_core::painter::{random_painter, scripted_painter, ConstantPainter};

use Color::{Blue, Red};

fn play(l: usize, script: &[Color]) -> ramsey_core::engine::Outcome {
    run_match(
        &mut constructive_builder(l),
        &mut scripted_painter(script.to_vec()),
        TargetPair::star_path(l),
        budget(l),
    )
    .unwrap()
}

#[test]
fn star_against_all_red() {
    let out = run_match(
        &mut base_case_builder(2),
        &mut ConstantPainter(Red),
        TargetPair::star_path(2),
        3,
    )
    .unwrap();
    assert_eq!((out.status, out.rounds), (Status::RedHit, 3));
}

#[test]
fn star_against_all_blue() {
    let out = run_match(
        &mut base_case_builder(3),
        &mut ConstantPainter(Blue),
        TargetPair::star_path(3),
        4,
    )
    .unwrap();
    assert_eq!((out.status, out.rounds), (Status::BlueHit, 2));
}

#[test]
fn one_blue_edge_is_p2() {
    let out = play(2, &[Blue]);
    assert_eq!((out.status, out.rounds), (Status::BlueHit, 1));
}

#[test]
fn order_four_two_red_then_two_blue() {
    for tail in [[Red, Red], [Red, Blue], [Blue, Red], [Blue, Blue]] {
        let script = [Red, Red, Blue, Blue, tail[0], tail[1]];
        let out = play(4, &script);
        assert!(out.status.is_over(), "{script:?}");
        assert!(out.rounds <= 6);
        let moves = &out.transcript.moves;
        // probes from center 0 to leaves 1..=4, then red leaf 1 to each blue leaf
        assert_eq!((moves[4].u, moves[4].v), (1, 3));
        if moves.len() > 5 {
            assert_eq!((moves[5].u, moves[5].v), (1, 4));
        }
    }
}

#[test]
fn order_five_pattern_brr_every_continuation() {
    // v1v2 blue, v2v3 red, v3v4 red
    for mask in 0..16u32 {
        let mut script = vec![Blue, Red, Red];
        script.extend((0..4).map(|i| if mask >> i & 1 == 1 { Blue } else { Red }));
        let out = play(5, &script);
        assert!(out.status.is_over(), "{script:?}");
        assert!(out.rounds <= 7);
    }
}

#[test]
fn seeded_random_painter_order_six() {
    let out = run_match(
        &mut constructive_builder(6),
        &mut random_painter(0),
        TargetPair::star_path(6),
        9,
    )
    .unwrap();
    assert!(out.status.is_over());
}

#[test]
fn builder_refuses_to_exceed_budget() {
    let mut b = constructive_builder(3);
    let mut state = GameState::new(TargetPair::star_path(9)).unwrap();
    for i in 0..4 {
        state.apply_move(i, i + 1, Blue).unwrap();
    }
    assert!(b.next_move(&state).is_err());
}

fn extend_with(replies: &[Color]) -> (usize, Status, Option<usize>) {
    let mut state = GameState::new(TargetPair::star_path(9)).unwrap();
    state.apply_move(0, 1, Blue).unwrap();
    state.apply_move(1, 2, Blue).unwrap();
    let mut ext = lemma1_extend(2);
    let mut painter = scripted_painter(replies.to_vec());
    while !state.status().is_over() {
        let Ok(p) = ext.next_move(&state) else { break };
        let (u, v) = state.resolve(p);
        let c = painter.choose_color(&state, u, v);
        state.apply_move(u, v, c).unwrap();
        let last = *state.transcript().last().unwrap();
        ext.observe(&state, &last);
    }
    (ext.moves_used(), state.status(), ext.extended_to())
}

#[test]
fn path_extension_stops_on_first_blue() {
    assert_eq!(extend_with(&[Blue]), (1, Status::Ongoing, Some(3)));
    assert_eq!(extend_with(&[Red, Red, Blue]), (3, Status::Ongoing, Some(5)));
    let (used, status, end) = extend_with(&[Red, Red, Red]);
    assert_eq!((used, status, end), (3, Status::RedHit, None));
}

#[test]
fn random_games_finish_in_budget() {
    for l in 2..=12 {
        for seed in 0..200 {
            let out = run_match(
                &mut constructive_builder(l),
                &mut random_painter(seed),
                TargetPair::star_path(l),
                budget(l),
            )
            .unwrap();
            assert!(out.status.is_over(), "l={l} seed={seed}");
            out.transcript.replay().unwrap();
        }
    }
}

#[test]
fn trace_covers_every_case() {
    let mut frames = BTreeSet::new();
    for l in [9, 10, 11] {
        for seed in 0..400 {
            let out = run_match_traced(
                &mut constructive_builder(l),
                &mut random_painter(seed),
                TargetPair::star_path(l),
                budget(l),
                true,
            )
            .unwrap();
            let trace = out.transcript.trace.unwrap();
            assert_eq!(trace.len(), out.rounds);
            assert_eq!(trace[0].frame, "Opening");
            for a in trace {
                frames.insert(a.frame.split('/').next().unwrap().to_string());
            }
        }
    }
    for case in ["Case1.1", "Case1.2", "Case1.3", "Case2", "Case3"] {
        assert!(frames.contains(case), "{case} never reached: {frames:?}");
    }
}

#[test]
fn trace_is_omitted_unless_requested() {
    let out = play(7, &[]);
    assert!(out.transcript.trace.is_none());
    assert!(!out.transcript.to_json().contains("trace"));
}

#[test]
fn sessions_are_deterministic() {
    for seed in 0..50 {
        let run = || {
            run_match(
                &mut constructive_builder(13),
                &mut random_painter(seed),
                TargetPair::star_path(13),
                budget(13),
            )
            .unwrap()
            .transcript
        };
        assert_eq!(run(), run());
    }
}
