//! Adjacency and distance spectra, plus the spectral identities for
//! regular graphs of diameter at most two.

use serde::Serialize;

use crate::eigen::{eig_sym, SymMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::DistanceMatrix;

/// Threshold below which an eigenvalue is not counted as positive.
pub const ZERO_THRESHOLD: f64 = 1e-9;
/// Absolute tolerance for matching a leading eigenvalue to a degree.
pub const DEGREE_MATCH_TOL: f64 = 1e-8;
/// Absolute tolerance for grouping equal eigenvalues in reports.
pub const MULTIPLICITY_TOL: f64 = 1e-8;

/// Real eigenvalues sorted non-increasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest eigenvalue.
    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    /// Least eigenvalue.
    pub fn least(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_sq(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum()
    }

    /// Runs of values within [`MULTIPLICITY_TOL`] of the first value of the
    /// run, as `(value, multiplicity)`. For display only.
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &x in &self.values {
            match out.last_mut() {
                Some((v, k)) if (*v - x).abs() <= MULTIPLICITY_TOL => *k += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }
}

pub fn adjacency_matrix(g: &Graph) -> SymMatrix {
    SymMatrix::from_fn(g.order(), |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum> {
    eig_sym(&adjacency_matrix(g))
}

pub fn distance_spectrum(dm: &DistanceMatrix) -> Result<Spectrum> {
    eig_sym(&dm.to_sym())
}

/// Number of eigenvalues above [`ZERO_THRESHOLD`].
pub fn count_positive(s: &Spectrum) -> usize {
    s.values.iter().filter(|&&x| x > ZERO_THRESHOLD).count()
}

/// Residuals of the two trace identities of a distance spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceResiduals {
    /// `|sum of eigenvalues|`; the trace of D is zero.
    pub sum: f64,
    /// `|sum of squared eigenvalues - 2 * sum_{i<j} d_ij^2|`.
    pub sum_sq: f64,
    /// `2 * sum_{i<j} d_ij^2`.
    pub expected_sum_sq: f64,
}

impl TraceResiduals {
    /// Both residuals within `1e-9 * max(1, 2 sum d_ij^2)`.
    pub fn within_tolerance(&self) -> bool {
        let tol = 1e-9 * self.expected_sum_sq.max(1.0);
        self.sum <= tol && self.sum_sq <= tol
    }
}

pub fn lemma1_check(s: &Spectrum, dm: &DistanceMatrix) -> TraceResiduals {
    let expected = 2.0 * dm.sum_sq_distances() as f64;
    TraceResiduals {
        sum: s.sum().abs(),
        sum_sq: (s.sum_sq() - expected).abs(),
        expected_sum_sq: expected,
    }
}

fn check_leading(adj: &Spectrum, r: usize) -> Result<()> {
    let got = adj.largest();
    if (got - r as f64).abs() > DEGREE_MATCH_TOL {
        return Err(Error::SpectrumMismatch {
            expected: r as f64,
            got,
        });
    }
    Ok(())
}

/// Distance spectrum of an `r`-regular graph of diameter at most two,
/// predicted from its adjacency spectrum: `2n - 2 - r` and `-2 - lambda_i(A)`
/// for `i >= 2`.
pub fn lemma2_spectrum(adj: &Spectrum, n: usize, r: usize) -> Result<Spectrum> {
    check_leading(adj, r)?;
    let mut values = vec![(2 * n - 2 - r) as f64];
    values.extend(adj.values[1..].iter().map(|x| -2.0 - x));
    Ok(Spectrum::from_unsorted(values))
}

/// Adjacency spectrum of the complement of an `r`-regular graph:
/// `n - r - 1` and `-1 - lambda_i(A)` for `i >= 2`.
pub fn complement_adj_spectrum(adj: &Spectrum, n: usize, r: usize) -> Result<Spectrum> {
    check_leading(adj, r)?;
    let mut values = vec![(n - r - 1) as f64];
    values.extend(adj.values[1..].iter().map(|x| -1.0 - x));
    Ok(Spectrum::from_unsorted(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    fn assert_spectrum(s: &Spectrum, want: &[f64], tol: f64) {
        assert_eq!(s.len(), want.len());
        for (x, y) in s.values().iter().zip(want) {
            assert!((x - y).abs() <= tol, "{:?} vs {:?}", s.values(), want);
        }
    }

    fn dspec(f: GraphFamily) -> Spectrum {
        distance_spectrum(&DistanceMatrix::new(&f.generate().unwrap()).unwrap()).unwrap()
    }

    // C5 adjacency eigenvalues 2cos(2 pi k / 5).
    const PHI_INV: f64 = 0.618_033_988_749_895;
    const PHI: f64 = 1.618_033_988_749_895;

    #[test]
    fn complete_graph_distance_spectrum() {
        for n in 2..12 {
            let mut want = vec![-1.0; n];
            want[0] = (n - 1) as f64;
            assert_spectrum(&dspec(GraphFamily::Complete(n)), &want, 1e-12);
        }
    }

    #[test]
    fn petersen_distance_spectrum() {
        let want = [15.0, 0.0, 0.0, 0.0, 0.0, -3.0, -3.0, -3.0, -3.0, -3.0];
        let s = dspec(GraphFamily::Petersen);
        assert_spectrum(&s, &want, 1e-12);
        assert_eq!(count_positive(&s), 1);
        assert_eq!(s.multiplicities().len(), 3);
    }

    #[test]
    fn count_positive_examples() {
        assert_eq!(count_positive(&dspec(GraphFamily::Complete(4))), 1);
        assert_eq!(count_positive(&Spectrum::from_unsorted(vec![0.0; 5])), 0);
    }

    #[test]
    fn lemma1_examples() {
        for (fam, sumsq) in [
            (GraphFamily::Complete(5), 20.0),
            (GraphFamily::Cycle(5), 50.0),
            (GraphFamily::Path(3), 12.0),
        ] {
            let dm = DistanceMatrix::new(&fam.generate().unwrap()).unwrap();
            let s = distance_spectrum(&dm).unwrap();
            let res = lemma1_check(&s, &dm);
            assert_eq!(res.expected_sum_sq, sumsq);
            assert!(res.within_tolerance(), "{fam:?}: {res:?}");
        }
    }

    #[test]
    fn lemma2_examples() {
        let k4 = Spectrum::from_unsorted(vec![3.0, -1.0, -1.0, -1.0]);
        assert_spectrum(
            &lemma2_spectrum(&k4, 4, 3).unwrap(),
            &[3.0, -1.0, -1.0, -1.0],
            0.0,
        );

        let c5 = Spectrum::from_unsorted(vec![2.0, PHI_INV, PHI_INV, -PHI, -PHI]);
        let want = [6.0, -2.0 - PHI_INV, -2.0 - PHI_INV, PHI - 2.0, PHI - 2.0];
        let predicted = lemma2_spectrum(&c5, 5, 2).unwrap();
        assert_spectrum(
            &predicted,
            &Spectrum::from_unsorted(want.to_vec()).values,
            1e-15,
        );
        assert_spectrum(&predicted, dspec(GraphFamily::Cycle(5)).values(), 1e-12);

        let pet = adjacency_spectrum(&GraphFamily::Petersen.generate().unwrap()).unwrap();
        let predicted = lemma2_spectrum(&pet, 10, 3).unwrap();
        assert_spectrum(&predicted, dspec(GraphFamily::Petersen).values(), 1e-12);

        assert!(matches!(
            lemma2_spectrum(&c5, 5, 3),
            Err(Error::SpectrumMismatch { .. })
        ));
    }

    #[test]
    fn complement_spectrum_examples() {
        let k4 = Spectrum::from_unsorted(vec![3.0, -1.0, -1.0, -1.0]);
        assert_spectrum(&complement_adj_spectrum(&k4, 4, 3).unwrap(), &[0.0; 4], 0.0);

        for fam in [GraphFamily::Cycle(5), GraphFamily::Petersen] {
            let g = fam.generate().unwrap();
            let r = g.regular_degree().unwrap();
            let a = adjacency_spectrum(&g).unwrap();
            let predicted = complement_adj_spectrum(&a, g.order(), r).unwrap();
            let direct = adjacency_spectrum(&g.complement()).unwrap();
            assert_spectrum(&predicted, direct.values(), 1e-12);
        }
        let pet = adjacency_spectrum(&GraphFamily::Petersen.generate().unwrap()).unwrap();
        let want = [6.0, 1.0, 1.0, 1.0, 1.0, -2.0, -2.0, -2.0, -2.0, -2.0];
        assert_spectrum(&complement_adj_spectrum(&pet, 10, 3).unwrap(), &want, 1e-12);
    }
}
