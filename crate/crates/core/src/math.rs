//! Small float helpers that avoid `std`.

pub(crate) fn abs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

/// Replaces NaN by +inf so that a broken evaluation never looks like a pass.
pub(crate) fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

pub(crate) fn max(a: f64, b: f64) -> f64 {
    let (a, b) = (sanitize(a), sanitize(b));
    if a >= b {
        a
    } else {
        b
    }
}


pub(crate) fn sort_dedup(v: &mut alloc::vec::Vec<f64>) {
    v.retain(|x| x.is_finite());
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup();
}
