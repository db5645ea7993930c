use crate::stochastic::RngStream;

/// Seeded Latin-hypercube sample of `n` points in the box `bounds`.
pub fn latin_hypercube(n: usize, bounds: &[(f64, f64)], seed: u64) -> Vec<Vec<f64>> {
    let mut rng = RngStream::new(seed, 0x4c48_5300);
    let d = bounds.len();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(d);
    for &(lo, hi) in bounds {
        let mut strata: Vec<usize> = (0..n).collect();
        // Fisher-Yates
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            strata.swap(i, j);
        }
        columns.push(
            strata
                .into_iter()
                .map(|s| lo + (hi - lo) * (s as f64 + rng.uniform()) / n as f64)
                .collect(),
        );
    }
    (0..n).map(|i| (0..d).map(|k| columns[k][i]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_per_stratum() {
        let b = [(0.0, 10.0), (-1.0, 1.0)];
        let pts = latin_hypercube(20, &b, 3);
        assert_eq!(pts.len(), 20);
        for (k, &(lo, hi)) in b.iter().enumerate() {
            let mut seen = [false; 20];
            for p in &pts {
                assert!(p[k] >= lo && p[k] <= hi);
                let s = (((p[k] - lo) / (hi - lo)) * 20.0) as usize;
                assert!(!seen[s.min(19)]);
                seen[s.min(19)] = true;
            }
        }
        assert_eq!(pts, latin_hypercube(20, &b, 3));
        assert_ne!(pts, latin_hypercube(20, &b, 4));
    }
}
