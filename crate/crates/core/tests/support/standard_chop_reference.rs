//! Line-by-line transcription of the reference chopping routine, kept
//! deliberately close to the original 1-based array code. Used only as a
//! test oracle; it shares nothing with the library implementation.

/// 1-based view over a vector.
struct OneBased(Vec<f64>);

impl OneBased {
    fn get(&self, i: usize) -> f64 {
        self.0[i - 1]
    }

    fn set(&mut self, i: usize, v: f64) {
        self.0[i - 1] = v;
    }
}

/// Round half away from zero.
fn round(x: f64) -> f64 {
    if x >= 0.0 {
        (x + 0.5).floor()
    } else {
        (x - 0.5).ceil()
    }
}

/// Returns `(cutoff, plateau_point)` for nonnegative magnitudes `b`.
pub fn reference_chop(b: &[f64], tol: f64) -> (usize, Option<usize>) {
    if tol >= 1.0 {
        return (1, None);
    }
    let n = b.len();
    let mut cutoff = n;
    if n < 17 {
        return (cutoff, None);
    }

    let b = OneBased(b.iter().map(|v| v.abs()).collect());
    let mut m = OneBased(vec![b.get(n); n]);
    let mut j = n - 1;
    while j >= 1 {
        m.set(
            j,
            if b.get(j) > m.get(j + 1) {
                b.get(j)
            } else {
                m.get(j + 1)
            },
        );
        j -= 1;
    }
    if m.get(1) == 0.0 {
        return (1, None);
    }
    let m1 = m.get(1);
    let mut envelope = OneBased(m.0.iter().map(|v| v / m1).collect());

    let mut plateau_point = 0usize;
    let mut j2 = 0usize;
    for j in 2..=n {
        j2 = round(1.25 * j as f64 + 5.0) as usize;
        if j2 > n {
            return (cutoff, None);
        }
        let e1 = envelope.get(j);
        let e2 = envelope.get(j2);
        let r = 3.0 * (1.0 - e1.ln() / tol.ln());
        let plateau = (e1 == 0.0) | (e2 / e1 > r);
        if plateau {
            plateau_point = j - 1;
            break;
        }
    }

    if envelope.get(plateau_point) == 0.0 {
        cutoff = plateau_point;
    } else {
        let floor = tol.powf(7.0 / 6.0);
        let j3 = envelope.0.iter().filter(|&&e| e >= floor).count();
        if j3 < j2 {
            j2 = j3 + 1;
            envelope.set(j2, floor);
        }
        let mut cc: Vec<f64> = (1..=j2).map(|i| envelope.get(i).log10()).collect();
        let hi = (-1.0 / 3.0) * tol.log10();
        for (i, c) in cc.iter_mut().enumerate() {
            // linspace(0, hi, j2) with the last entry pinned
            let step = if i + 1 == j2 {
                hi
            } else {
                (i as f64 * hi) / (j2 - 1) as f64
            };
            *c += step;
        }
        let mut d = 1;
        for i in 2..=j2 {
            if cc[i - 1] < cc[d - 1] {
                d = i;
            }
        }
        cutoff = if d > 1 { d - 1 } else { 1 };
    }
    (cutoff, Some(plateau_point))
}
