//! Sparse multimode bosonic number-state algebra.
//!
//! States are maps from occupation vectors to complex amplitudes. All paper
//! states have a handful of nonzero amplitudes; truncated coherent states need
//! a few hundred. One sparse representation serves both.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{CoreError, Result};

/// Amplitudes with magnitude below this are dropped after arithmetic.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// Tolerance for accepting a state as normalized.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;

/// Photon counts per mode, the key of the sparse amplitude map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OccupationVector(Vec<u32>);

impl OccupationVector {
    pub fn new(counts: Vec<u32>) -> Self {
        OccupationVector(counts)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn count(&self, mode: usize) -> u32 {
        self.0[mode]
    }

    /// Total photon number of this basis ket.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl From<&[u32]> for OccupationVector {
    fn from(counts: &[u32]) -> Self {
        OccupationVector(counts.to_vec())
    }
}

/// A single product of creation operators acting on a set of modes.
#[derive(Clone, Debug)]
pub struct PolyTerm {
    pub coefficient: Complex64,
    /// (mode index, creation-operator power), powers >= 1.
    pub factors: Vec<(usize, u32)>,
}

/// Linear combination of creation-operator monomials, P(a_0^dag, ...).
#[derive(Clone, Debug, Default)]
pub struct OperatorPolynomial {
    pub terms: Vec<PolyTerm>,
}

impl OperatorPolynomial {
    pub fn new(terms: Vec<PolyTerm>) -> Self {
        OperatorPolynomial { terms }
    }

    /// Single monomial c * prod_i (a_i^dag)^{p_i}.
    pub fn monomial(coefficient: Complex64, factors: Vec<(usize, u32)>) -> Self {
        OperatorPolynomial {
            terms: vec![PolyTerm {
                coefficient,
                factors,
            }],
        }
    }
}

/// Pure multimode state as a sparse map from occupation vectors to amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct FockState {
    mode_count: usize,
    amplitudes: BTreeMap<OccupationVector, Complex64>,
}

impl FockState {
    /// The zero vector of the Hilbert space (no amplitudes at all).
    pub fn zero(mode_count: usize) -> Self {
        FockState {
            mode_count,
            amplitudes: BTreeMap::new(),
        }
    }

    /// |0,...,0> with amplitude 1.
    pub fn vacuum(mode_count: usize) -> Self {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(
            OccupationVector(vec![0; mode_count]),
            Complex64::new(1.0, 0.0),
        );
        FockState {
            mode_count,
            amplitudes,
        }
    }

    /// Basis ket |n_0, n_1, ...> with amplitude 1.
    pub fn basis(counts: &[u32]) -> Self {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(OccupationVector(counts.to_vec()), Complex64::new(1.0, 0.0));
        FockState {
            mode_count: counts.len(),
            amplitudes,
        }
    }

    /// Build a state from explicit (occupation, amplitude) pairs.
    pub fn from_amplitudes(
        mode_count: usize,
        entries: impl IntoIterator<Item = (Vec<u32>, Complex64)>,
    ) -> Result<Self> {
        let mut state = FockState::zero(mode_count);
        for (counts, amp) in entries {
            if counts.len() != mode_count {
                return Err(CoreError::ModeMismatch {
                    left: counts.len(),
                    right: mode_count,
                });
            }
            state.add_amplitude(OccupationVector(counts), amp);
        }
        Ok(state)
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn amplitude(&self, counts: &[u32]) -> Complex64 {
        self.amplitudes
            .get(&OccupationVector(counts.to_vec()))
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (&OccupationVector, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn term_count(&self) -> usize {
        self.amplitudes.len()
    }

    fn add_amplitude(&mut self, occ: OccupationVector, amp: Complex64) {
        let updated = self.amplitudes.get(&occ).copied().unwrap_or_default() + amp;
        if updated.norm() < PRUNE_THRESHOLD {
            self.amplitudes.remove(&occ);
        } else {
            self.amplitudes.insert(occ, updated);
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq() - 1.0).abs() <= NORMALIZATION_TOLERANCE
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .filter_map(|(occ, c)| {
                let scaled = c * factor;
                (scaled.norm() >= PRUNE_THRESHOLD).then(|| (occ.clone(), scaled))
            })
            .collect();
        FockState {
            mode_count: self.mode_count,
            amplitudes,
        }
    }

    pub fn add(&self, other: &FockState) -> Result<Self> {
        if self.mode_count != other.mode_count {
            return Err(CoreError::ModeMismatch {
                left: self.mode_count,
                right: other.mode_count,
            });
        }
        let mut out = self.clone();
        for (occ, amp) in &other.amplitudes {
            out.add_amplitude(occ.clone(), *amp);
        }
        Ok(out)
    }

    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm < PRUNE_THRESHOLD {
            return Err(CoreError::ZeroState);
        }
        Ok(self.scale(Complex64::new(1.0 / norm, 0.0)))
    }

    /// a_mode^dag applied termwise: a^dag |n> = sqrt(n+1) |n+1>.
    pub fn apply_creation(&self, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        let mut out = FockState::zero(self.mode_count);
        for (occ, amp) in &self.amplitudes {
            let n = occ.count(mode);
            let mut counts = occ.counts().to_vec();
            counts[mode] = n + 1;
            out.add_amplitude(
                OccupationVector(counts),
                amp * ((n + 1) as f64).sqrt(),
            );
        }
        Ok(out)
    }

    /// a_mode applied termwise: a |n> = sqrt(n) |n-1>; empty modes vanish.
    pub fn apply_annihilation(&self, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        let mut out = FockState::zero(self.mode_count);
        for (occ, amp) in &self.amplitudes {
            let n = occ.count(mode);
            if n == 0 {
                continue;
            }
            let mut counts = occ.counts().to_vec();
            counts[mode] = n - 1;
            out.add_amplitude(OccupationVector(counts), amp * (n as f64).sqrt());
        }
        Ok(out)
    }

    /// <self|ket>, conjugating this state's amplitudes.
    pub fn inner_product(&self, ket: &FockState) -> Result<Complex64> {
        if self.mode_count != ket.mode_count {
            return Err(CoreError::ModeMismatch {
                left: self.mode_count,
                right: ket.mode_count,
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let (small, large, small_is_bra) = if self.amplitudes.len() <= ket.amplitudes.len() {
            (&self.amplitudes, &ket.amplitudes, true)
        } else {
            (&ket.amplitudes, &self.amplitudes, false)
        };
        for (occ, amp) in small {
            if let Some(other) = large.get(occ) {
                acc += if small_is_bra {
                    amp.conj() * other
                } else {
                    other.conj() * amp
                };
            }
        }
        Ok(acc)
    }

    /// <psi| prod_i (a_i^dag)^{m_i} prod_j (a_j)^{n_j} |psi> for a normalized
    /// state, evaluated as the inner product of two ladder-lowered copies.
    pub fn normally_ordered_moment(
        &self,
        creation_counts: &[u32],
        annihilation_counts: &[u32],
    ) -> Result<Complex64> {
        if creation_counts.len() != self.mode_count || annihilation_counts.len() != self.mode_count
        {
            return Err(CoreError::ModeMismatch {
                left: creation_counts.len().max(annihilation_counts.len()),
                right: self.mode_count,
            });
        }
        let norm_sq = self.norm_sq();
        if (norm_sq - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(CoreError::NotNormalized { norm_sq });
        }
        let mut bra_side = self.clone();
        for (mode, &power) in creation_counts.iter().enumerate() {
            for _ in 0..power {
                bra_side = bra_side.apply_annihilation(mode)?;
            }
        }
        let mut ket_side = self.clone();
        for (mode, &power) in annihilation_counts.iter().enumerate() {
            for _ in 0..power {
                ket_side = ket_side.apply_annihilation(mode)?;
            }
        }
        bra_side.inner_product(&ket_side)
    }

    /// Mean photon number <n_mode>, read directly off the amplitudes.
    pub fn mean_photon_number(&self, mode: usize) -> Result<f64> {
        self.check_mode(mode)?;
        Ok(self
            .amplitudes
            .iter()
            .map(|(occ, c)| occ.count(mode) as f64 * c.norm_sqr())
            .sum())
    }

    /// Total mean photon number over all modes.
    pub fn total_mean_photon_number(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|(occ, c)| occ.total() as f64 * c.norm_sqr())
            .sum()
    }

    /// Some(n) when every stored amplitude carries exactly n photons.
    pub fn definite_total_photon_number(&self) -> Option<u32> {
        let mut iter = self.amplitudes.keys();
        let first = iter.next()?.total();
        iter.all(|occ| occ.total() == first).then_some(first)
    }

    /// Post-select vacuum on `modes`: keep amplitudes with zero occupation
    /// there, drop those modes, renormalize. Returns the reduced state and
    /// the kept squared norm (the post-selection success probability).
    pub fn project_vacuum(&self, modes: &[usize]) -> Result<(FockState, f64)> {
        for &m in modes {
            self.check_mode(m)?;
        }
        let norm_sq = self.norm_sq();
        if (norm_sq - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(CoreError::NotNormalized { norm_sq });
        }
        let keep: Vec<usize> = (0..self.mode_count)
            .filter(|m| !modes.contains(m))
            .collect();
        let mut kept = FockState::zero(keep.len());
        let mut probability = 0.0;
        for (occ, amp) in &self.amplitudes {
            if modes.iter().any(|&m| occ.count(m) != 0) {
                continue;
            }
            probability += amp.norm_sqr();
            let counts: Vec<u32> = keep.iter().map(|&m| occ.count(m)).collect();
            kept.add_amplitude(OccupationVector(counts), *amp);
        }
        if probability < PRUNE_THRESHOLD {
            return Err(CoreError::EmptyProjection);
        }
        let scale = 1.0 / probability.sqrt();
        Ok((kept.scale(Complex64::new(scale, 0.0)), probability))
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.mode_count {
            return Err(CoreError::ModeOutOfRange {
                mode,
                mode_count: self.mode_count,
            });
        }
        Ok(())
    }
}

/// JSON form: list of {"occupation": [...], "re": x, "im": y}, in the map's
/// deterministic key order.
impl Serialize for FockState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            occupation: &'a [u32],
            re: f64,
            im: f64,
        }
        let mut seq = serializer.serialize_seq(Some(self.amplitudes.len()))?;
        for (occ, amp) in &self.amplitudes {
            seq.serialize_element(&Entry {
                occupation: occ.counts(),
                re: amp.re,
                im: amp.im,
            })?;
        }
        seq.end()
    }
}

/// Expand P(a_0^dag, ...)|0> in the number basis using
/// (a^dag)^n |0> = sqrt(n!) |n> per mode. Not auto-normalized.
pub fn state_from_polynomial(poly: &OperatorPolynomial, mode_count: usize) -> Result<FockState> {
    let mut out = FockState::zero(mode_count);
    for term in &poly.terms {
        let mut partial = FockState::vacuum(mode_count).scale(term.coefficient);
        for &(mode, power) in &term.factors {
            if mode >= mode_count {
                return Err(CoreError::ModeOutOfRange { mode, mode_count });
            }
            for _ in 0..power {
                partial = partial.apply_creation(mode)?;
            }
        }
        out = out.add(&partial)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn noon2() -> FockState {
        // (|2,0> - |0,2>)/sqrt(2)
        FockState::from_amplitudes(
            2,
            [
                (vec![2, 0], c(1.0 / SQRT_2)),
                (vec![0, 2], c(-1.0 / SQRT_2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn polynomial_two_photons_one_mode() {
        // (1/sqrt 2) a0^dag^2 |0> = |2,0>
        let poly = OperatorPolynomial::monomial(c(1.0 / SQRT_2), vec![(0, 2)]);
        let state = state_from_polynomial(&poly, 2).unwrap();
        assert!((state.amplitude(&[2, 0]) - c(1.0)).norm() < 1e-12);
        assert_eq!(state.term_count(), 1);
    }

    #[test]
    fn polynomial_distinct_modes() {
        let poly = OperatorPolynomial::monomial(c(1.0), vec![(0, 1), (1, 1)]);
        let state = state_from_polynomial(&poly, 2).unwrap();
        assert!((state.amplitude(&[1, 1]) - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn polynomial_interpolation_endpoint() {
        // sqrt(eta) a^dag^2/sqrt 2 + sqrt(1-eta) a^dag b^dag at eta = 1
        let poly = OperatorPolynomial::new(vec![
            PolyTerm {
                coefficient: c(1.0 / SQRT_2),
                factors: vec![(0, 2)],
            },
            PolyTerm {
                coefficient: c(0.0),
                factors: vec![(0, 1), (1, 1)],
            },
        ]);
        let state = state_from_polynomial(&poly, 2).unwrap();
        assert!((state.amplitude(&[2, 0]) - c(1.0)).norm() < 1e-12);
        assert!(state.amplitude(&[1, 1]).norm() < 1e-15);
    }

    #[test]
    fn polynomial_rejects_out_of_range_mode() {
        let poly = OperatorPolynomial::monomial(c(1.0), vec![(2, 1)]);
        assert!(matches!(
            state_from_polynomial(&poly, 2),
            Err(CoreError::ModeOutOfRange { .. })
        ));
    }

    #[test]
    fn inner_product_norm_and_orthogonality() {
        let psi = noon2();
        assert!((psi.inner_product(&psi).unwrap() - c(1.0)).norm() < 1e-12);
        let ket20 = FockState::basis(&[2, 0]);
        let ket02 = FockState::basis(&[0, 2]);
        assert!(ket20.inner_product(&ket02).unwrap().norm() < 1e-15);
    }

    #[test]
    fn inner_product_of_the_two_inside_states() {
        // Basis-expansion oracle: <(|20>+sqrt2|11>+|02>)/2 | (|20>-|02>)/sqrt2>
        // = (1/2)(1/sqrt2) + 0 - (1/2)(1/sqrt2) = 0.
        let young = FockState::from_amplitudes(
            2,
            [
                (vec![2, 0], c(0.5)),
                (vec![1, 1], c(SQRT_2 / 2.0)),
                (vec![0, 2], c(0.5)),
            ],
        )
        .unwrap();
        assert!(young.inner_product(&noon2()).unwrap().norm() < 1e-12);
    }

    #[test]
    fn inner_product_conjugate_symmetry() {
        let a = FockState::from_amplitudes(
            2,
            [
                (vec![1, 0], Complex64::new(0.3, 0.4)),
                (vec![0, 1], Complex64::new(-0.1, 0.9)),
            ],
        )
        .unwrap();
        let b = FockState::from_amplitudes(
            2,
            [
                (vec![1, 0], Complex64::new(0.7, -0.2)),
                (vec![0, 2], Complex64::new(0.5, 0.1)),
            ],
        )
        .unwrap();
        let ab = a.inner_product(&b).unwrap();
        let ba = b.inner_product(&a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-15);
    }

    #[test]
    fn inner_product_rejects_mode_mismatch() {
        let a = FockState::basis(&[1]);
        let b = FockState::basis(&[1, 0]);
        assert!(matches!(
            a.inner_product(&b),
            Err(CoreError::ModeMismatch { .. })
        ));
    }

    #[test]
    fn annihilation_ladder_rule() {
        let two = FockState::basis(&[2, 0]);
        let lowered = two.apply_annihilation(0).unwrap();
        assert!((lowered.amplitude(&[1, 0]) - c(SQRT_2)).norm() < 1e-12);
    }

    #[test]
    fn annihilation_of_empty_mode_vanishes() {
        let s = FockState::basis(&[0, 1]);
        let lowered = s.apply_annihilation(0).unwrap();
        assert_eq!(lowered.term_count(), 0);
    }

    #[test]
    fn annihilation_on_noon_state() {
        let lowered = noon2().apply_annihilation(0).unwrap();
        assert!((lowered.amplitude(&[1, 0]) - c(1.0)).norm() < 1e-12);
        assert_eq!(lowered.term_count(), 1);
    }

    #[test]
    fn number_operator_moment() {
        let s = FockState::basis(&[1, 1]);
        let m = s.normally_ordered_moment(&[1, 0], &[1, 0]).unwrap();
        assert!((m - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn pair_moment_on_two_photons() {
        let s = FockState::basis(&[2, 0]);
        let m = s.normally_ordered_moment(&[2, 0], &[2, 0]).unwrap();
        assert!((m - c(2.0)).norm() < 1e-12);
    }

    #[test]
    fn cross_moment_on_young_inside_state() {
        // <1^dag 2> on (|2,0> + sqrt2 |1,1> + |0,2>)/2 -> 1, by the
        // basis-expansion oracle sqrt2 c20* c11 + sqrt2 c11* c02.
        let s = FockState::from_amplitudes(
            2,
            [
                (vec![2, 0], c(0.5)),
                (vec![1, 1], c(SQRT_2 / 2.0)),
                (vec![0, 2], c(0.5)),
            ],
        )
        .unwrap();
        let m = s.normally_ordered_moment(&[1, 0], &[0, 1]).unwrap();
        assert!((m - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn moment_rejects_unnormalized_state() {
        let s = FockState::basis(&[1, 0]).scale(c(2.0));
        assert!(matches!(
            s.normally_ordered_moment(&[1, 0], &[1, 0]),
            Err(CoreError::NotNormalized { .. })
        ));
    }

    #[test]
    fn project_vacuum_trivial() {
        let s = FockState::basis(&[1, 0]);
        let (reduced, p) = s.project_vacuum(&[1]).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!((reduced.amplitude(&[1]) - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn project_vacuum_half_mass() {
        let s = FockState::from_amplitudes(
            2,
            [
                (vec![1, 0], c(1.0 / SQRT_2)),
                (vec![0, 1], c(1.0 / SQRT_2)),
            ],
        )
        .unwrap();
        let (reduced, p) = s.project_vacuum(&[1]).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        assert!((reduced.amplitude(&[1]) - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn project_vacuum_empty_result_is_signaled() {
        let s = FockState::basis(&[0, 1]);
        assert!(matches!(
            s.project_vacuum(&[1]),
            Err(CoreError::EmptyProjection)
        ));
    }

    #[test]
    fn normalize_examples() {
        let s = FockState::basis(&[1, 0]).scale(c(2.0));
        let n = s.normalize().unwrap();
        assert!((n.amplitude(&[1, 0]) - c(1.0)).norm() < 1e-12);

        let un = FockState::from_amplitudes(
            2,
            [(vec![2, 0], c(1.0)), (vec![0, 2], c(-1.0))],
        )
        .unwrap();
        let n = un.normalize().unwrap();
        assert!((n.amplitude(&[2, 0]) - c(1.0 / SQRT_2)).norm() < 1e-12);
        assert!((n.amplitude(&[0, 2]) - c(-1.0 / SQRT_2)).norm() < 1e-12);

        assert!(matches!(
            FockState::zero(2).normalize(),
            Err(CoreError::ZeroState)
        ));
    }

    #[test]
    fn complementary_projection_probabilities_sum_to_one() {
        let s = FockState::from_amplitudes(
            2,
            [
                (vec![1, 0], c(0.6)),
                (vec![0, 1], c(0.8)),
            ],
        )
        .unwrap();
        let (_, p_keep) = s.project_vacuum(&[1]).unwrap();
        let (_, p_complement) = s.project_vacuum(&[0]).unwrap();
        assert!((p_keep + p_complement - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mean_photon_number_matches_moment() {
        let s = FockState::from_amplitudes(
            2,
            [
                (vec![2, 0], c(0.5)),
                (vec![1, 1], c(SQRT_2 / 2.0)),
                (vec![0, 2], c(0.5)),
            ],
        )
        .unwrap();
        for mode in 0..2 {
            let mut creation = vec![0, 0];
            creation[mode] = 1;
            let via_moment = s.normally_ordered_moment(&creation, &creation).unwrap();
            let direct = s.mean_photon_number(mode).unwrap();
            assert!((via_moment.re - direct).abs() < 1e-12);
            assert!(via_moment.im.abs() < 1e-12);
        }
    }

    #[test]
    fn definite_photon_number_detection() {
        assert_eq!(noon2().definite_total_photon_number(), Some(2));
        let mixed = FockState::from_amplitudes(
            2,
            [(vec![1, 0], c(0.6)), (vec![2, 0], c(0.8))],
        )
        .unwrap();
        assert_eq!(mixed.definite_total_photon_number(), None);
    }

    #[test]
    fn json_serialization_shape() {
        let s = noon2();
        let json = serde_json::to_value(&s).unwrap();
        let entries = json.as_array().unwrap();
        assert_eq!(entries.len(), 2);
        assert!(entries[0]["occupation"].is_array());
        assert!(entries[0]["re"].is_number());
        assert!(entries[0]["im"].is_number());
    }
}
