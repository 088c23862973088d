//! Central finite differences, used only by unit tests.

pub const EPS: f64 = 1e-5;

/// Numerical gradient of `loss` with respect to every entry reachable
/// through `select`.
pub fn numeric_grad<T: Clone>(
    state: &T,
    select: impl Fn(&mut T) -> &mut [f64],
    loss: impl Fn(&T) -> f64,
) -> Vec<f64> {
    let mut probe = state.clone();
    let n = select(&mut probe).len();
    (0..n)
        .map(|i| {
            let orig = select(&mut probe)[i];
            select(&mut probe)[i] = orig + EPS;
            let plus = loss(&probe);
            select(&mut probe)[i] = orig - EPS;
            let minus = loss(&probe);
            select(&mut probe)[i] = orig;
            (plus - minus) / (2.0 * EPS)
        })
        .collect()
}

/// `‖a − b‖ / max(‖a‖, ‖b‖)`, zero when both vanish.
pub fn rel_error(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = na.max(nb);
    if scale < 1e-300 {
        0.0
    } else {
        diff / scale
    }
}
