//! Small helpers for 3-vectors stored as `[f64; 3]`.

pub type Vec3 = [f64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn neg(a: &Vec3) -> Vec3 {
    [-a[0], -a[1], -a[2]]
}

/// Returns `a / |a|`, or `None` when `|a|` is numerically zero.
pub fn normalize(a: &Vec3) -> Option<Vec3> {
    let n = norm(a);
    if n < 1e-300 {
        None
    } else {
        Some(scale(a, 1.0 / n))
    }
}

/// Distance between the axes spanned by `a` and `b`: min(|a-b|, |a+b|).
pub fn axis_distance(a: &Vec3, b: &Vec3) -> f64 {
    let d1 = norm(&sub(a, b));
    let d2 = norm(&add(a, b));
    d1.min(d2)
}

/// True when `a` and `b` span the same axis within `tol`.
pub fn same_axis(a: &Vec3, b: &Vec3, tol: f64) -> bool {
    axis_distance(a, b) <= tol
}

/// Canonical sign for an axis representative: largest-magnitude component positive.
pub fn canonical_axis(a: &Vec3) -> Vec3 {
    let mut k = 0;
    for i in 1..3 {
        if a[i].abs() > a[k].abs() {
            k = i;
        }
    }
    if a[k] < 0.0 {
        neg(a)
    } else {
        *a
    }
}

/// Two unit vectors orthogonal to `a`, forming a right-handed triple with it.
pub fn tangent_basis(a: &Vec3) -> (Vec3, Vec3) {
    let helper = if a[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let t1 = normalize(&cross(a, &helper)).expect("helper not parallel");
    let t2 = cross(a, &t1);
    (t1, t2)
}
