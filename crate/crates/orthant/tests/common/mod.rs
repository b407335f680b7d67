#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn orthant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthant")).args(args).output().expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// (λ, β₁, β₂, β₃, criterion)
pub type Rows = &'static [[f64; 5]];

pub const LASSO: Rows = &[
    [0.0, 0.1142857, 0.8714286, -1.1857143, 0.8428571],
    [0.1176471, 0.0, 0.7352941, -1.0294118, 1.0743945],
    [0.3333333, 0.0, 0.6666667, -1.0000000, 1.4444444],
    [1.4186047, -0.3720930, 0.0, -0.3953488, 2.7652785],
    [5.4285714, -0.4285714, 0.0, 0.0, 5.1632653],
    [14.0, 0.0, 0.0, 0.0, 7.0],
];

/// Criterion column omitted from comparison: it is listed without weights.
pub const ADAPTIVE_QUARTER: Rows = &[
    [0.0, 0.1142857, 0.8714286, -1.1857143, 0.8428571],
    [0.09594963, 0.0, 0.7414637, -1.0325815, 1.0352911],
    [1.03873325, 0.0, 0.4342734, -0.9060934, 2.4139669],
    [2.07061914, -0.1135323, 0.0, -0.6283158, 3.0895394],
    [3.05595699, 0.0, 0.0, -0.6726211, 3.9085728],
    [11.47856765, 0.0, 0.0, 0.0, 6.9904572],
];

pub const ENET_HALF: Rows = &[
    [0.0, 0.1142857, 0.8714286, -1.1857143, 0.8428571],
    [0.1459742, 0.0, 0.7315377, -1.0262653, 1.0539203],
    [0.2471659, 0.0, 0.7039861, -1.0132639, 1.1811668],
    [2.6872073, -0.3743399, 0.0, -0.3589718, 2.8979158],
    [16.9614814, -0.1937892, 0.0, 0.0, 6.4652136],
    [28.0, 0.0, 0.0, 0.0, 7.0],
];

/// Largest deviation from reference rows over λ, β and optionally the
/// criterion. Panics when the row counts differ.
pub fn deviation(table: &orthant::BreakpointTable, rows: Rows, criterion: bool) -> f64 {
    assert_eq!(table.rows().len(), rows.len(), "breakpoint count");
    let mut worst: f64 = 0.0;
    for (r, want) in table.rows().iter().zip(rows) {
        worst = worst.max((r.lambda - want[0]).abs());
        for j in 0..3 {
            worst = worst.max((r.beta[j] - want[j + 1]).abs());
        }
        if criterion {
            worst = worst.max((r.criterion - want[4]).abs());
        }
    }
    worst
}
