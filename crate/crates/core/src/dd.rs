//! Double-double helpers on top of `twofloat`.

use twofloat::TwoFloat;

/// Quotient `a / b` to double-double accuracy by long division: an `f64`
/// estimate corrected with the exactly formed remainder.
pub(crate) fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}
