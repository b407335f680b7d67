use orthant_core::path::{MoveKind, MoveRecord, Verdict};
use orthant_core::OrthantSign;

use MoveKind::{Reactivate as R, Shrink as S};
use Verdict::{Accepted as Acc, NegativeEntries as Neg, NotAboveCurrent as Low, NotMinimal as Big};

/// (current orthant, current λ, [(kind, C′, coordinate 1-based, λ̂, verdict)])
pub type Step = (&'static str, f64, &'static [(MoveKind, &'static str, usize, f64, Verdict)]);

/// Listed as 2.426 in the reference ledger. The 0+- inverse
/// (1/44)·[[12,2],[2,4]] with b = (1, 11) and d = (1, 1) gives 34/14.
pub const ZERO_PLUS_MINUS_SHRINK_2: f64 = 17.0 / 7.0;

pub const LEDGER: &[Step] = &[
    ("++-", 0.0, &[(S, "++-", 1, 0.118, Acc), (S, "++-", 2, 0.753, Neg), (S, "++-", 3, 0.893, Neg)]),
    (
        "0+-",
        0.118,
        &[
            (R, "-+-", 1, 0.333, Acc),
            (R, "-+-", 2, 1.419, Big),
            (R, "-+-", 3, 2.128, Neg),
            (R, "++-", 1, 0.118, Low),
            (R, "++-", 2, 0.753, Neg),
            (R, "++-", 3, 0.893, Neg),
            (S, "0+-", 2, ZERO_PLUS_MINUS_SHRINK_2, Big),
            (S, "0+-", 3, 7.666, Neg),
        ],
    ),
    (
        "0+-",
        0.333,
        &[
            (R, "-+-", 1, 0.333, Low),
            (R, "-+-", 2, 1.419, Acc),
            (R, "-+-", 3, 2.128, Neg),
            (R, "++-", 1, 0.118, Low),
            (R, "++-", 2, 0.753, Neg),
            (R, "++-", 3, 0.893, Neg),
            (S, "0+-", 2, ZERO_PLUS_MINUS_SHRINK_2, Big),
            (S, "0+-", 3, 7.666, Neg),
        ],
    ),
    (
        "-0-",
        1.419,
        &[
            (R, "---", 1, -0.571, Neg),
            (R, "---", 2, -2.179, Low),
            (R, "---", 3, -5.929, Low),
            (R, "-+-", 1, 0.333, Low),
            (R, "-+-", 2, 1.419, Low),
            (R, "-+-", 3, 2.128, Neg),
            (S, "-0-", 1, -25.0, Low),
            (S, "-0-", 3, 5.429, Acc),
        ],
    ),
    (
        "-00",
        5.429,
        &[
            (R, "--0", 1, 11.0, Neg),
            (R, "--0", 2, -0.286, Low),
            (R, "-+0", 1, 18.333, Neg),
            (R, "-+0", 2, 0.316, Low),
            (R, "-0-", 1, -25.0, Low),
            (R, "-0-", 3, 5.429, Low),
            (R, "-0+", 1, 1.0, Neg),
            (R, "-0+", 3, -1.151, Low),
            (S, "-00", 1, 14.0, Acc),
        ],
    ),
];

fn key(kind: MoveKind, from: &OrthantSign, i: usize) -> (u8, String, usize) {
    (kind as u8, from.to_string(), i)
}

/// Compares traced records with [`LEDGER`]. Returns the largest `λ̂`
/// deviation, or a description of the first structural mismatch.
pub fn check(records: &[MoveRecord]) -> Result<f64, String> {
    let steps = records.iter().map(|r| r.step).max().map_or(0, |s| s + 1);
    if steps != LEDGER.len() {
        return Err(format!("{steps} steps, expected {}", LEDGER.len()));
    }
    let mut worst: f64 = 0.0;
    for (step, (current, lambda, moves)) in LEDGER.iter().enumerate() {
        let mut got: Vec<&MoveRecord> = records.iter().filter(|r| r.step == step).collect();
        if got.len() != moves.len() {
            return Err(format!("step {step}: {} candidates, expected {}", got.len(), moves.len()));
        }
        got.sort_by_key(|r| key(r.kind, &r.orthant_from, r.coordinate));
        let mut want: Vec<_> = moves.to_vec();
        want.sort_by_key(|m| key(m.0, &m.1.parse().unwrap(), m.2 - 1));
        for (r, m) in got.iter().zip(&want) {
            if r.current.to_string() != *current || (r.lambda_current - lambda).abs() >= 1e-3 {
                return Err(format!("step {step}: at {} / {}", r.current, r.lambda_current));
            }
            if r.orthant_from.to_string() != m.1 || r.coordinate != m.2 - 1 || r.verdict != m.4 {
                return Err(format!(
                    "step {step}: got {} i={} {:?}, expected {} i={} {:?}",
                    r.orthant_from,
                    r.coordinate + 1,
                    r.verdict,
                    m.1,
                    m.2,
                    m.4
                ));
            }
            let Some(lh) = r.lambda_hat else {
                return Err(format!("step {step}: {} i={} has no candidate", m.1, m.2));
            };
            worst = worst.max((lh - m.3).abs());
        }
    }
    Ok(worst)
}
