//! The two long exact sequences, their connecting maps, and the reduced group.
//!
//! Exactness is checked as equality of lattices (image of the incoming map
//! equals kernel of the outgoing one) in the generators of each node.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::actions::{omega_inverse_slice, u_slice};
use crate::complex::{ChainMapSlice, Flavor, FloerComplex};
use crate::data::MonopoleData;
use crate::homology::{graded_homology_of, induced_on_homology, GradedAbelianGroup, Homology, HomologyClassMap, Tail, TailKind};
use crate::linalg::{lattice_contains, AbelianGroupInvariants, GroupMap, SparseIntMatrix};
use crate::window::Window;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    pub degree: i64,
    pub node: String,
    pub image: AbelianGroupInvariants,
    pub kernel: AbelianGroupInvariants,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub sequence: String,
    pub window: Window,
    pub nodes: Vec<NodeReport>,
    /// Consecutive maps compose to zero everywhere.
    pub compositions_zero: bool,
    pub all_exact: bool,
}

impl ExactnessReport {
    pub fn first_failure(&self) -> Option<&NodeReport> {
        self.nodes.iter().find(|n| !n.exact)
    }
}

fn node(degree: i64, name: &str, incoming: &GroupMap, outgoing: &GroupMap) -> NodeReport {
    let image = incoming.image_lattice();
    let kernel = outgoing.kernel_lattice();
    let forward = lattice_contains(&kernel, &image);
    let backward = lattice_contains(&image, &kernel);
    let witness = match (forward, backward) {
        (true, true) => None,
        (false, _) => Some("image of the incoming map is not contained in the kernel".to_string()),
        (true, false) => Some("kernel of the outgoing map is larger than the image".to_string()),
    };
    NodeReport {
        degree,
        node: name.to_string(),
        image: incoming.image_invariants(),
        kernel: outgoing.kernel_invariants(),
        exact: witness.is_none(),
        witness,
    }
}

fn identity_slice(src: &FloerComplex, tgt: &FloerComplex, degrees: Window) -> ChainMapSlice {
    ChainMapSlice::build(src.flavor(), tgt.flavor(), 0, degrees, |n| src.identity_map(tgt, n))
}

/// All groups and maps of `… → HF^−_n → HF^∞_n → HF^+_n → HF^−_{n−1} → …`.
#[derive(Clone, Debug)]
pub struct MainSequence {
    pub window: Window,
    pub minus: Homology,
    pub infinity: Homology,
    pub plus: Homology,
    pub plus_graded: GradedAbelianGroup,
    /// Highest degree with Minus generators.
    pub minus_top: i64,
    /// `l_n : HF^−_n → HF^∞_n` for `n ∈ [lo − 1, hi]`.
    pub l: HomologyClassMap,
    /// `π_n : HF^∞_n → HF^+_n` for `n ∈ window`.
    pub pi: HomologyClassMap,
    /// `δ_n : HF^+_n → HF^−_{n−1}` for `n ∈ window`.
    pub delta: BTreeMap<i64, GroupMap>,
}

impl MainSequence {
    pub fn build(cx: &FloerComplex, window: Window) -> Result<Self, Error> {
        let minus_cx = cx.with_flavor(Flavor::Minus);
        let inf_cx = cx.with_flavor(Flavor::Infinity);
        let plus_cx = cx.with_flavor(Flavor::Plus);
        let wide = Window::new(window.lo - 1, window.hi);
        let minus = Homology::compute(&minus_cx, wide)?;
        let infinity = Homology::compute(&inf_cx, wide)?;
        let (plus_graded, plus) = graded_homology_of(&plus_cx, window)?;
        let margin = Window::new(window.lo - 2, window.hi + 1);
        let l = induced_on_homology(
            &minus_cx,
            &inf_cx,
            &minus,
            &infinity,
            &identity_slice(&minus_cx, &inf_cx, margin),
            wide,
        )?;
        let pi = induced_on_homology(
            &inf_cx,
            &plus_cx,
            &infinity,
            &plus,
            &identity_slice(&inf_cx, &plus_cx, margin),
            window,
        )?;
        let mut delta = BTreeMap::new();
        for n in window.degrees() {
            delta.insert(n, connecting_delta_at(cx, &plus, &minus, n)?);
        }
        Ok(MainSequence {
            window,
            minus,
            infinity,
            plus,
            plus_graded,
            minus_top: minus_cx.support().1.unwrap_or(i64::MAX),
            l,
            pi,
            delta,
        })
    }

    pub fn exactness(&self) -> ExactnessReport {
        let mut nodes = Vec::new();
        let mut compositions_zero = true;
        for n in self.window.degrees() {
            let l_n = &self.l.maps[&n];
            let pi_n = &self.pi.maps[&n];
            let d_n = &self.delta[&n];
            let l_prev = &self.l.maps[&(n - 1)];
            nodes.push(node(n, "HF^inf", l_n, pi_n));
            nodes.push(node(n, "HF^+", pi_n, d_n));
            nodes.push(node(n - 1, "HF^-", d_n, l_prev));
            for (outer, inner) in [(pi_n, l_n), (d_n, pi_n), (l_prev, d_n)] {
                compositions_zero &= outer.compose(inner).is_ok_and(|c| c.is_zero());
            }
        }
        let all_exact = nodes.iter().all(|n| n.exact);
        ExactnessReport {
            sequence: "main".into(),
            window: self.window,
            nodes,
            compositions_zero,
            all_exact,
        }
    }

    /// `Coker(π_n)` and `Ker(l_{n−1})` per degree.
    pub fn reduced_pairs(&self) -> BTreeMap<i64, (AbelianGroupInvariants, AbelianGroupInvariants)> {
        self.window
            .degrees()
            .map(|n| {
                let coker = self.pi.maps[&n].cokernel_invariants();
                let ker = self.l.maps[&(n - 1)].kernel_invariants();
                (n, (coker, ker))
            })
            .collect()
    }
}

/// `δ_n : HF^+_n → HF^−_{n−1}`: lift a Plus cycle to the Laurent complex with
/// the same coordinates, apply `D`, and read the result in the Minus subcomplex.
pub fn connecting_delta_at(cx: &FloerComplex, plus: &Homology, minus: &Homology, n: i64) -> Result<GroupMap, Error> {
    let plus_cx = cx.with_flavor(Flavor::Plus);
    let inf_cx = cx.with_flavor(Flavor::Infinity);
    let minus_cx = cx.with_flavor(Flavor::Minus);
    let missing = |what: &str| Error::Lift {
        degree: n,
        detail: format!("{what} homology not computed"),
    };
    let hp = plus.at(n).ok_or_else(|| missing("plus"))?;
    let hm = minus.at(n - 1).ok_or_else(|| missing("minus"))?;
    let lift = plus_cx.identity_map(&inf_cx, n);
    let restrict = inf_cx.identity_map(&minus_cx, n - 1);
    let include = minus_cx.identity_map(&inf_cx, n - 1);
    let d = inf_cx.differential(n);
    let mut cols = Vec::new();
    for z in hp.representatives() {
        let w = d.mul_vec(&lift.mul_vec(z));
        let wm = restrict.mul_vec(&w);
        if include.mul_vec(&wm) != w {
            return Err(Error::Lift {
                degree: n,
                detail: "boundary of the lift leaves the minus subcomplex".into(),
            });
        }
        cols.push(hm.class_of(&wm)?);
    }
    let m = SparseIntMatrix::from_columns(hm.presented().num_generators(), &cols);
    Ok(GroupMap::new(hp.presented(), hm.presented(), m)?)
}

pub fn connecting_delta(data: &MonopoleData, n: i64) -> Result<GroupMap, Error> {
    let cx = FloerComplex::new(data, Flavor::Plus)?;
    let plus = Homology::compute(&cx, Window::new(n, n))?;
    let minus = Homology::compute(&cx.with_flavor(Flavor::Minus), Window::new(n - 1, n - 1))?;
    connecting_delta_at(&cx, &plus, &minus, n)
}

pub fn check_les_main(data: &MonopoleData, window: Window) -> Result<ExactnessReport, Error> {
    let cx = FloerComplex::new(data, Flavor::Infinity)?;
    Ok(MainSequence::build(&cx, window)?.exactness())
}

/// The reduced group computed both as `Coker(π_*)` and as `Ker(l_{*−1})`.
pub fn hf_red_of(seq: &MainSequence) -> Result<GradedAbelianGroup, Error> {
    let mut groups = BTreeMap::new();
    for (n, (coker, ker)) in seq.reduced_pairs() {
        if coker != ker {
            return Err(Error::Mismatch {
                what: "Coker(pi) and Ker(l)".into(),
                degree: n,
                left: coker.to_string(),
                right: ker.to_string(),
            });
        }
        groups.insert(n, coker);
    }
    let zero_tail = |from| Tail {
        kind: TailKind::Zero,
        from,
        even: AbelianGroupInvariants::zero(),
        odd: AbelianGroupInvariants::zero(),
        verified: true,
    };
    let w = seq.window;
    let tail_above = seq
        .plus_graded
        .tail_above
        .as_ref()
        .filter(|t| t.kind == TailKind::Periodic)
        .and_then(|_| {
            // above the Minus support, π is the identity on chains
            (seq.minus_top < w.hi - 1).then(|| zero_tail(w.hi + 1))
        });
    let tail_below = seq
        .plus_graded
        .tail_below
        .as_ref()
        .filter(|t| t.kind == TailKind::Zero)
        .map(|_| zero_tail(w.lo - 1));
    Ok(GradedAbelianGroup {
        window: w,
        groups,
        tail_above,
        tail_below,
    })
}

pub fn hf_red(data: &MonopoleData, window: Window) -> Result<GradedAbelianGroup, Error> {
    let cx = FloerComplex::new(data, Flavor::Infinity)?;
    hf_red_of(&MainSequence::build(&cx, window)?)
}

/// `… → ĤF_n → HF^+_n → HF^+_{n−2} → ĤF_{n−1} → …` with `Ω⁻¹` as the middle map.
#[derive(Clone, Debug)]
pub struct HatSequence {
    pub window: Window,
    pub hat: GradedAbelianGroup,
    pub plus: GradedAbelianGroup,
    /// `ĤF_n → HF^+_n` for `n ∈ [lo − 1, hi]`.
    pub inclusion: HomologyClassMap,
    /// `Ω⁻¹ : HF^+_n → HF^+_{n−2}` for `n ∈ window`.
    pub omega_inverse: HomologyClassMap,
    /// `u : HF^+_n → HF^+_{n−2}` for `n ∈ window`.
    pub u: HomologyClassMap,
    /// `δ̂ : HF^+_{n−2} → ĤF_{n−1}`, keyed by `n`.
    pub delta: BTreeMap<i64, GroupMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatReport {
    pub exactness: ExactnessReport,
    /// Degrees where induced `u` and induced `Ω⁻¹` differ.
    pub u_disagreements: Vec<i64>,
    pub hat_nonzero: bool,
    pub plus_nonzero: bool,
    pub biconditional_holds: bool,
}

impl HatSequence {
    pub fn build(cx: &FloerComplex, window: Window) -> Result<Self, Error> {
        let hat_cx = cx.with_flavor(Flavor::Hat);
        let plus_cx = cx.with_flavor(Flavor::Plus);
        let hat_window = Window::new(window.lo - 1, window.hi);
        let plus_window = Window::new(window.lo - 2, window.hi);
        let (hat, hat_h) = graded_homology_of(&hat_cx, hat_window)?;
        let (plus, plus_h) = graded_homology_of(&plus_cx, plus_window)?;
        let margin = Window::new(window.lo - 2, window.hi + 1);
        let inclusion = induced_on_homology(
            &hat_cx,
            &plus_cx,
            &hat_h,
            &plus_h,
            &identity_slice(&hat_cx, &plus_cx, margin),
            hat_window,
        )?;
        let omega_inverse = induced_on_homology(
            &plus_cx,
            &plus_cx,
            &plus_h,
            &plus_h,
            &omega_inverse_slice(&plus_cx, margin),
            window,
        )?;
        let u = induced_on_homology(&plus_cx, &plus_cx, &plus_h, &plus_h, &u_slice(&plus_cx, margin)?, window)?;
        let mut delta = BTreeMap::new();
        for n in window.degrees() {
            delta.insert(n, hat_delta_at(cx, &plus_h, &hat_h, n)?);
        }
        Ok(HatSequence {
            window,
            hat,
            plus,
            inclusion,
            omega_inverse,
            u,
            delta,
        })
    }

    pub fn report(&self) -> HatReport {
        let mut nodes = Vec::new();
        let mut compositions_zero = true;
        for n in self.window.degrees() {
            let i_n = &self.inclusion.maps[&n];
            let w_n = &self.omega_inverse.maps[&n];
            let d_n = &self.delta[&n];
            let i_prev = &self.inclusion.maps[&(n - 1)];
            nodes.push(node(n, "HF^+", i_n, w_n));
            nodes.push(node(n - 2, "HF^+ (target of u)", w_n, d_n));
            nodes.push(node(n - 1, "HF^hat", d_n, i_prev));
            for (outer, inner) in [(w_n, i_n), (d_n, w_n), (i_prev, d_n)] {
                compositions_zero &= outer.compose(inner).is_ok_and(|c| c.is_zero());
            }
        }
        let all_exact = nodes.iter().all(|n| n.exact);
        let u_disagreements = self
            .u
            .maps
            .iter()
            .filter(|(n, f)| self.omega_inverse.maps.get(n) != Some(*f))
            .map(|(&n, _)| n)
            .collect();
        let hat_nonzero = !self.hat.is_zero();
        let plus_nonzero = !self.plus.is_zero();
        HatReport {
            exactness: ExactnessReport {
                sequence: "hat".into(),
                window: self.window,
                nodes,
                compositions_zero,
                all_exact,
            },
            u_disagreements,
            hat_nonzero,
            plus_nonzero,
            biconditional_holds: hat_nonzero == plus_nonzero,
        }
    }
}

/// `δ̂ : HF^+_{n−2} → ĤF_{n−1}`: lift by `Ω`, apply `D`, and read the result
/// in the `k = 0` slice.
pub fn hat_delta_at(cx: &FloerComplex, plus: &Homology, hat: &Homology, n: i64) -> Result<GroupMap, Error> {
    let plus_cx = cx.with_flavor(Flavor::Plus);
    let hat_cx = cx.with_flavor(Flavor::Hat);
    let missing = |what: &str| Error::Lift {
        degree: n,
        detail: format!("{what} homology not computed"),
    };
    let hp = plus.at(n - 2).ok_or_else(|| missing("plus"))?;
    let hh = hat.at(n - 1).ok_or_else(|| missing("hat"))?;
    let lift = plus_cx.map_matrix(&plus_cx, n - 2, 2, |g| vec![(g.shifted(1), BigInt::from(1))]);
    let d = plus_cx.differential(n);
    let restrict = plus_cx.identity_map(&hat_cx, n - 1);
    let include = hat_cx.identity_map(&plus_cx, n - 1);
    let mut cols = Vec::new();
    for z in hp.representatives() {
        let w = d.mul_vec(&lift.mul_vec(z));
        let wh = restrict.mul_vec(&w);
        if include.mul_vec(&wh) != w {
            return Err(Error::Lift {
                degree: n,
                detail: "boundary of the lift leaves the k = 0 slice".into(),
            });
        }
        cols.push(hh.class_of(&wh)?);
    }
    let m = SparseIntMatrix::from_columns(hh.presented().num_generators(), &cols);
    Ok(GroupMap::new(hp.presented(), hh.presented(), m)?)
}

pub fn check_les_hat(data: &MonopoleData, window: Window) -> Result<HatReport, Error> {
    let cx = FloerComplex::new(data, Flavor::Plus)?;
    Ok(HatSequence::build(&cx, window)?.report())
}
