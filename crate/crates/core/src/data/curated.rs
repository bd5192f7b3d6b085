//! Small hand-checked instances used throughout the tests and the corpus.

use super::{MonopoleData, THETA};

/// Only the reducible point.
pub fn i0() -> MonopoleData {
    MonopoleData::new("I0")
}

/// `a` (gr 1) flows to `θ` once; `d` (gr −2) receives nothing from `θ`.
pub fn i1() -> MonopoleData {
    MonopoleData::new("I1")
        .with_point("a", 1)
        .with_point("d", -2)
        .with_n("a", THETA, 1)
        .canonical()
}

/// `I1` with `n_θd = 1`; violates the `B'` identity and is therefore invalid.
pub fn i1_prime() -> MonopoleData {
    MonopoleData::new("I1p")
        .with_point("a", 1)
        .with_point("d", -2)
        .with_n("a", THETA, 1)
        .with_n(THETA, "d", 1)
        .canonical()
}

/// A single `n_ab = 2` between gradings 1 and 0, producing 2-torsion.
pub fn i2() -> MonopoleData {
    MonopoleData::new("I2")
        .with_point("a", 1)
        .with_point("b", 0)
        .with_n("a", "b", 2)
        .canonical()
}

/// A single Euler number `m_ac = 3` between gradings 2 and 0.
pub fn i3() -> MonopoleData {
    MonopoleData::new("I3")
        .with_point("a", 2)
        .with_point("c", 0)
        .with_m("a", "c", 3)
        .canonical()
}

/// A square of grading gap 3 where the two paths cancel in identity `B`.
pub fn i4() -> MonopoleData {
    MonopoleData::new("I4")
        .with_point("a3", 3)
        .with_point("b2", 2)
        .with_point("c1", 1)
        .with_point("d0", 0)
        .with_n("a3", "b2", 1)
        .with_m("b2", "d0", 2)
        .with_m("a3", "c1", 2)
        .with_n("c1", "d0", 1)
        .with_n("c1", THETA, 1)
        .canonical()
}

/// An `m`-step followed by `n_cθ`, giving a nonzero `d³` out of grading 3.
pub fn i5() -> MonopoleData {
    MonopoleData::new("I5")
        .with_point("a", 3)
        .with_point("c", 1)
        .with_m("a", "c", 2)
        .with_n("c", THETA, 1)
        .canonical()
}

/// Every term of the `B'` identity is present and they cancel.
pub fn i6() -> MonopoleData {
    MonopoleData::new("I6")
        .with_point("a", 1)
        .with_point("b", 0)
        .with_point("c", -1)
        .with_point("d", -2)
        .with_n("a", "b", 1)
        .with_m("b", "d", 1)
        .with_n("a", THETA, 1)
        .with_n(THETA, "d", 1)
        .with_m("a", "c", 2)
        .with_n("c", "d", 1)
        .canonical()
}

/// All valid curated instances, in a fixed order.
pub fn curated_library() -> Vec<MonopoleData> {
    vec![i0(), i1(), i2(), i3(), i4(), i5(), i6()]
}
