//! The six auxiliary functions whose signs close the Renyi upper-bound
//! argument, written exactly as displayed, plus the numeric slope constants
//! used to locate their extrema.
//!
//! Each function is 0 at x = 0 by direct evaluation and tends to 0 as
//! x -> 1; at x = 1 itself the formulas contain ln 0, so the limit value 0 is
//! returned explicitly.

use std::f64::consts::LN_2;

use super::{CheckResult, GridSpec, Location, Worst};
use crate::entropy::shannon_binary;

fn ln(v: f64) -> f64 {
    v.ln()
}

/// I1(x; a) = -2x(1-x)^{2a} ln((1-x)/2) ln(1-x) - 2x(1+x)^{2a} ln((1+x)/2) ln(1+x)
pub fn i1(x: f64, a: f64) -> f64 {
    if x == 1.0 {
        return 0.0;
    }
    -2.0 * x * (1.0 - x).powf(2.0 * a) * ln((1.0 - x) / 2.0) * ln(1.0 - x)
        - 2.0 * x * (1.0 + x).powf(2.0 * a) * ln((1.0 + x) / 2.0) * ln(1.0 + x)
}

/// I2(x) = -x(1-x^2) ln((1-x^2)/4) + 2(1+x^2) ln((1+x)/(1-x)) ln((1+x^2)/2)
pub fn i2(x: f64) -> f64 {
    if x == 1.0 {
        return 0.0;
    }
    -x * (1.0 - x * x) * ln((1.0 - x * x) / 4.0) + 2.0 * (1.0 + x * x) * ln((1.0 + x) / (1.0 - x)) * ln((1.0 + x * x) / 2.0)
}

/// G1(x) = 2(1+x^2) ln((1-x)/(1+x)) ln(2/(1+x^2)) + 4x H((1-x)/2)
pub fn g1(x: f64) -> f64 {
    if x == 1.0 {
        return 0.0;
    }
    let h = shannon_binary((1.0 - x) / 2.0).expect("argument in [0, 1/2]");
    2.0 * (1.0 + x * x) * ln((1.0 - x) / (1.0 + x)) * ln(2.0 / (1.0 + x * x)) + 4.0 * x * h
}

/// G2(x) = (1-x)ln(1-x)((1+x)ln(2/(1+x^2)) - x(1-x))
///       - (1+x)ln(1+x)((1-x)ln(2/(1+x^2)) + x(1+x)) + 2x(1+x^2)ln 2
pub fn g2(x: f64) -> f64 {
    if x == 1.0 {
        return 0.0;
    }
    let l = ln(2.0 / (1.0 + x * x));
    (1.0 - x) * ln(1.0 - x) * ((1.0 + x) * l - x * (1.0 - x)) - (1.0 + x) * ln(1.0 + x) * ((1.0 - x) * l + x * (1.0 + x))
        + 2.0 * x * (1.0 + x * x) * LN_2
}

/// J1(x; a) = (1+x^2) ln(2/(1+x^2)) ln((1+x)/(1-x))
///          - x(1+x)^{1+a}(1-x)^{1-a} ln(2/(1+x)) - x(1+x)^{1-a}(1-x)^{1+a} ln(2/(1-x))
pub fn j1(x: f64, a: f64) -> f64 {
    if x == 1.0 {
        return 0.0;
    }
    (1.0 + x * x) * ln(2.0 / (1.0 + x * x)) * ln((1.0 + x) / (1.0 - x))
        - x * (1.0 + x).powf(1.0 + a) * (1.0 - x).powf(1.0 - a) * ln(2.0 / (1.0 + x))
        - x * (1.0 + x).powf(1.0 - a) * (1.0 - x).powf(1.0 + a) * ln(2.0 / (1.0 - x))
}

/// Displayed simplification of J1(x; 0). It does not match `j1(x, 0.0)`:
/// the second term has the opposite sign, and the general formula at a = 0
/// reduces to `j2`. Kept for comparison; the sign checks use `j1`.
pub fn j1_at_zero_display(x: f64) -> f64 {
    if x == 1.0 {
        return 0.0;
    }
    (1.0 + x * x) * ln(2.0 / (1.0 + x * x)) * ln((1.0 + x) / (1.0 - x)) + x * (1.0 - x * x) * ln(4.0 / (1.0 - x * x))
}

/// Displayed simplification of J1(x; 1).
pub fn j1_at_one_display(x: f64) -> f64 {
    if x == 1.0 {
        return 0.0;
    }
    (1.0 + x * x) * ln(2.0 / (1.0 + x * x)) * ln((1.0 + x) / (1.0 - x))
        - x * ((1.0 - x).powi(2) * ln(2.0 / (1.0 - x)) + (1.0 + x).powi(2) * ln(2.0 / (1.0 + x)))
}

/// J2(x) = x(1-x^2) ln((1-x^2)/4) + (1+x^2) ln(2/(1+x^2)) ln((1+x)/(1-x))
pub fn j2(x: f64) -> f64 {
    if x == 1.0 {
        return 0.0;
    }
    x * (1.0 - x * x) * ln((1.0 - x * x) / 4.0) + (1.0 + x * x) * ln(2.0 / (1.0 + x * x)) * ln((1.0 + x) / (1.0 - x))
}

struct SignFact {
    claim: &'static str,
    anchor: &'static str,
    f: fn(f64) -> f64,
    /// +1 for ">= 0", -1 for "<= 0".
    sign: f64,
}

const FACTS: [SignFact; 7] = [
    SignFact { claim: "appendix-i1-nonneg", anchor: "I1(x;1) >= 0 on [0,1]", f: |x| i1(x, 1.0), sign: 1.0 },
    SignFact { claim: "appendix-i2-nonpos", anchor: "I2(x) <= 0 on [0,1]", f: i2, sign: -1.0 },
    SignFact { claim: "appendix-g1-nonpos", anchor: "G1(x) <= 0 on [0,1]", f: g1, sign: -1.0 },
    SignFact { claim: "appendix-g2-nonneg", anchor: "G2(x) >= 0 on [0,1]", f: g2, sign: 1.0 },
    SignFact { claim: "appendix-j1-zero-nonneg", anchor: "J1(x;0) >= 0 on [0,1]", f: |x| j1(x, 0.0), sign: 1.0 },
    SignFact { claim: "appendix-j1-one-nonneg", anchor: "J1(x;1) >= 0 on [0,1]", f: |x| j1(x, 1.0), sign: 1.0 },
    SignFact { claim: "appendix-j2-nonneg", anchor: "J2(x) >= 0 on [0,1]", f: j2, sign: 1.0 },
];

/// A closed-form slope constant with its claimed bound and the function it
/// is the derivative of.
pub struct DerivativeAnchor {
    pub claim: &'static str,
    pub anchor: &'static str,
    pub at: f64,
    pub value: fn() -> f64,
    pub bound: f64,
    /// True for "value > bound", false for "value < bound".
    pub above: bool,
    pub f: fn(f64) -> f64,
}

pub const DERIVATIVE_ANCHORS: [DerivativeAnchor; 7] = [
    DerivativeAnchor {
        claim: "appendix-i1-slope-half",
        anchor: "d/dx[I1(x;1)/(2x)] at 1/2 = 3(ln(4/3)-1)ln(3/2) + 2ln(2)^2 > 1/11",
        at: 0.5,
        value: || 3.0 * ((4.0f64 / 3.0).ln() - 1.0) * 1.5f64.ln() + 2.0 * LN_2 * LN_2,
        bound: 1.0 / 11.0,
        above: true,
        f: |x| i1(x, 1.0) / (2.0 * x),
    },
    DerivativeAnchor {
        claim: "appendix-i2-slope-three-quarters",
        anchor: "I2'(3/4) = 9/8 + 59/16 ln7 + ln5(200/7 + 6ln7) - ln2(4231/56 + 15ln7) > 1/3",
        at: 0.75,
        value: || {
            let (l2, l5, l7) = (LN_2, 5f64.ln(), 7f64.ln());
            9.0 / 8.0 + 59.0 / 16.0 * l7 + l5 * (200.0 / 7.0 + 6.0 * l7) - l2 * (4231.0 / 56.0 + 15.0 * l7)
        },
        bound: 1.0 / 3.0,
        above: true,
        f: i2,
    },
    DerivativeAnchor {
        claim: "appendix-g1-slope-half",
        anchor: "G1'(1/2) = -6ln2(2+ln3) - 2ln3 + ln5(20/3 + 2ln3) < -1/2",
        at: 0.5,
        value: || {
            let (l3, l5) = (3f64.ln(), 5f64.ln());
            -6.0 * LN_2 * (2.0 + l3) - 2.0 * l3 + l5 * (20.0 / 3.0 + 2.0 * l3)
        },
        bound: -0.5,
        above: false,
        f: g1,
    },
    DerivativeAnchor {
        claim: "appendix-g2-slope-half",
        anchor: "G2'(1/2) = ln3(ln(8/5) - 3/20) + ln(50/27) - 1/2 > 1/3",
        at: 0.5,
        value: || 3f64.ln() * (1.6f64.ln() - 0.15) + (50.0f64 / 27.0).ln() - 0.5,
        bound: 1.0 / 3.0,
        above: true,
        f: g2,
    },
    DerivativeAnchor {
        claim: "appendix-j1-zero-slope-half",
        anchor: "J1'(1/2;0) = -1/2 - 10/3 ln5 + 9ln2 + ln3(ln(8/5) - 3/4) >= 1/16",
        at: 0.5,
        value: || -0.5 - 10.0 / 3.0 * 5f64.ln() + 9.0 * LN_2 + 3f64.ln() * (1.6f64.ln() - 0.75),
        bound: 1.0 / 16.0,
        above: true,
        f: |x| j1(x, 0.0),
    },
    DerivativeAnchor {
        claim: "appendix-j1-zero-slope-four-fifths",
        anchor: "J1'(4/5;0) = 2/25(23ln(10/3) - 4(4 + 10ln3)) + (82/9 + 16ln3/5)ln(50/41) < -1/14",
        at: 0.8,
        value: || {
            let l3 = 3f64.ln();
            2.0 / 25.0 * (23.0 * (10.0f64 / 3.0).ln() - 4.0 * (4.0 + 10.0 * l3))
                + (82.0 / 9.0 + 16.0 * l3 / 5.0) * (50.0f64 / 41.0).ln()
        },
        bound: -1.0 / 14.0,
        above: false,
        f: |x| j1(x, 0.0),
    },
    DerivativeAnchor {
        claim: "appendix-j1-one-slope-half",
        anchor: "J1'(1/2;1) = 1/2 - 10/3 ln5 + 3ln2 + ln3(11/4 + ln(8/5)) > 3/4",
        at: 0.5,
        value: || 0.5 - 10.0 / 3.0 * 5f64.ln() + 3.0 * LN_2 + 3f64.ln() * (2.75 + 1.6f64.ln()),
        bound: 0.75,
        above: true,
        f: |x| j1(x, 1.0),
    },
];

/// Five-point central difference.
pub(crate) fn derivative(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-3;
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

const DERIVATIVE_TOL: f64 = 1e-8;
/// Required size of every endpoint value at distance ENDPOINT_OFFSET.
pub const ENDPOINT_TOL: f64 = 1e-7;
pub const ENDPOINT_OFFSET: f64 = 1e-4;

/// Sign facts on the grid, the endpoint limits, the displayed endpoint
/// forms of J1, and the slope constants.
pub fn check_appendix_facts(grid: &GridSpec) -> Vec<CheckResult> {
    let slack = grid.slack();
    let mut out = Vec::new();
    for fact in &FACTS {
        let mut w = Worst::new();
        for &x in grid.xs() {
            w.record(fact.sign * (fact.f)(x), Location::x(x));
        }
        out.push(w.finish(fact.claim, fact.anchor, slack));
    }

    // Limits at both ends, evaluated one offset inside the interval.
    let mut w = Worst::new();
    for fact in &FACTS {
        for x in [ENDPOINT_OFFSET, 1.0 - ENDPOINT_OFFSET] {
            w.record(ENDPOINT_TOL - (fact.f)(x).abs(), Location::x(x));
        }
    }
    out.push(w.finish(
        "appendix-endpoint-limits",
        "|f(x)| <= 1e-7 at x = 1e-4 and x = 1 - 1e-4 for I1(.;1), I2, G1, G2, J1(.;0), J1(.;1), J2",
        slack,
    ));

    // The same limits approached: |f| shrinks towards 0 along x = 10^-k and
    // 1 - 10^-k and is below the tolerance once k = 12.
    let mut w = Worst::new();
    for (i, fact) in FACTS.iter().enumerate() {
        for side in [0.0, 1.0] {
            let at = |k: i32| {
                let d = 10f64.powi(-k);
                (fact.f)(if side == 0.0 { d } else { 1.0 - d }).abs()
            };
            for k in 4..12 {
                w.record(at(k) - at(k + 1), Location { x: Some(side), index: Some(i * 100 + k as usize), order: None });
            }
            w.record(ENDPOINT_TOL - at(12), Location { x: Some(side), index: Some(i * 100 + 12), order: None });
        }
    }
    out.push(w.finish(
        "appendix-endpoint-approach",
        "|f(10^-k)| and |f(1-10^-k)| decrease in k = 4..12 and are <= 1e-7 at k = 12",
        slack,
    ));

    let mut w = Worst::new();
    for &x in grid.xs() {
        w.record(-(j1(x, 1.0) - j1_at_one_display(x)).abs(), Location::x(x));
    }
    out.push(w.finish("appendix-j1-one-simplified-form", "J1(x;1) equals its simplified display", slack));

    for a in &DERIVATIVE_ANCHORS {
        let v = (a.value)();
        let bound_margin = if a.above { v - a.bound } else { a.bound - v };
        let numeric = derivative(a.f, a.at);
        let mut w = Worst::new();
        w.record(bound_margin.min(DERIVATIVE_TOL - (numeric - v).abs()), Location::x(a.at));
        out.push(w.finish(a.claim, a.anchor, slack));
    }
    out
}
