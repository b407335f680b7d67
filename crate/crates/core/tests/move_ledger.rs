mod common;

use common::ledger::{self, ZERO_PLUS_MINUS_SHRINK_2};
use common::*;
use orthant_core::lasso::lasso_path_traced;
use orthant_core::oracle::{enumerate_valid_moves, OracleMode};
use orthant_core::path::{MoveRecord, Verdict};
use orthant_core::{OrthantSign, PenaltyWeights};

#[test]
fn toy_move_ledger() {
    let g = toy_a().gram_mask();
    let mut records: Vec<MoveRecord> = Vec::new();
    lasso_path_traced(&g, &PenaltyWeights::unit(3), &mut |r: &MoveRecord| records.push(r.clone())).unwrap();
    let worst = ledger::check(&records).unwrap();
    assert!(worst < 1e-3, "lambda-hat deviation {worst}");
}

#[test]
fn listed_shrink_value_disagrees_with_the_inverse() {
    let s_inv = [[12.0 / 44.0, 2.0 / 44.0], [2.0 / 44.0, 4.0 / 44.0]];
    let (b, d) = ([1.0, 11.0], [1.0, 1.0]);
    let num = s_inv[0][0] * b[0] + s_inv[0][1] * b[1];
    let den = s_inv[0][0] * d[0] + s_inv[0][1] * d[1];
    assert!((num / den - ZERO_PLUS_MINUS_SHRINK_2).abs() < 1e-12);
    assert!((num / den - 2.426).abs() > 1e-3);
    let third = (s_inv[1][0] * b[0] + s_inv[1][1] * b[1]) / (s_inv[1][0] * d[0] + s_inv[1][1] * d[1]);
    assert!((third - 7.666).abs() < 1e-3);
}

#[test]
fn nine_valid_moves_include_the_path() {
    let g = toy_a().gram_mask();
    let moves = enumerate_valid_moves(&g, &OracleMode::Lasso(PenaltyWeights::unit(3)), 14).unwrap();
    assert_eq!(moves.len(), 9);

    let mut accepted = Vec::new();
    lasso_path_traced(&g, &PenaltyWeights::unit(3), &mut |r: &MoveRecord| {
        if r.verdict == Verdict::Accepted {
            accepted.push(r.clone());
        }
    })
    .unwrap();
    assert_eq!(accepted.len(), 5);
    for r in &accepted {
        assert!(
            moves.iter().any(|m| m.from == r.orthant_from
                && m.coordinate == r.coordinate
                && (m.lambda - r.lambda_hat.unwrap()).abs() < 1e-12),
            "path move {} i={} missing",
            r.orthant_from,
            r.coordinate
        );
    }
    let excluded: OrthantSign = "-+0".parse().unwrap();
    assert!(!moves.iter().any(|m| m.from == excluded && m.coordinate == 0));
}

#[test]
fn single_column_has_one_move() {
    let g = single_column().gram_mask();
    let moves = enumerate_valid_moves(&g, &OracleMode::Lasso(PenaltyWeights::unit(1)), 14).unwrap();
    assert_eq!(moves.len(), 1);
    assert_eq!(moves[0].from.to_string(), "-");
    assert_eq!(moves[0].to.to_string(), "0");
    assert!((moves[0].lambda - 14.0).abs() < 1e-12);
}
