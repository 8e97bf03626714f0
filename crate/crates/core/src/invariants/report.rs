use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::betti::{alternating_sum, betti_numbers, euler_characteristic, twisted_betti_numbers};
use super::geometry::{alg_dim, canonical_descriptor, hol_vf_dimension, AlgDim, HolVfDimension};
use super::lattices::{multiplicity_one, theta_lattice};
use super::InvariantsError;
use crate::bigjson;
use crate::dynamics::{perron_data, DEFAULT_TOL};
use crate::kato::{cover_sheets, cyclic_normal_form, FactorSeq, KatoMatrix};
use crate::linalg::{IntMatrix, LatticeBasis, LatticeIndex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pi1Complement {
    pub description: String,
    /// Action of the generator of `ℤ` on `ℤ^{n−l}`.
    pub action: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerronAlpha {
    pub value: f64,
    pub exact: Option<String>,
    pub power_used: usize,
}

/// Every invariant of `M_A` computed from the matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct InvariantReport {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub rank_r: usize,
    pub betti: Vec<usize>,
    pub twisted_betti: Vec<usize>,
    pub euler: i64,
    pub m1: usize,
    pub kA_basis: LatticeBasis,
    pub theta_basis: LatticeBasis,
    pub theta_index: LatticeIndex,
    pub alg_dim: AlgDim,
    pub h0_tangent: HolVfDimension,
    pub h0_one_forms: usize,
    pub kodaira: String,
    pub pi1_M: String,
    pub pi1_M_minus_C: Pi1Complement,
    pub perron_alpha: PerronAlpha,
    pub torus_rank: usize,
    pub k_components: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covering_degree_to_base: Option<usize>,
    pub canonical_descriptor: String,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "bigjson::opt_scalar")]
    pub anticanonical_h0: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alg_reduction: Option<String>,
    pub det: i64,
    /// Least rotation of the factor word. Equal keys give biholomorphic
    /// manifolds; different keys are not claimed to be non-isomorphic.
    pub class_key: String,
}

fn check(cond: bool, what: &str) -> Result<(), InvariantsError> {
    if cond {
        Ok(())
    } else {
        Err(InvariantsError::Inconsistent(what.to_string()))
    }
}

pub fn build_report(a: &IntMatrix) -> Result<InvariantReport, InvariantsError> {
    build_report_for(&KatoMatrix::new(a.clone())?)
}

pub fn build_report_for(km: &KatoMatrix) -> Result<InvariantReport, InvariantsError> {
    let (n, k, l) = (km.n(), km.k(), km.l());
    let form = km.form();
    let r = n - l;
    let betti = betti_numbers(n, k);
    let twisted_betti = twisted_betti_numbers(n, k);
    let euler = euler_characteristic(n, k);
    check(alternating_sum(&betti) == euler, "Betti numbers do not sum to χ")?;
    check(alternating_sum(&twisted_betti) == euler, "twisted Betti numbers do not sum to χ")?;

    let m1 = multiplicity_one(km.matrix());
    let theta = theta_lattice(km)?;
    check(m1 >= l, "m(1) < l")?;
    check(theta.k_a.rank() == m1, "rank K_A ≠ m(1)")?;
    check(theta.basis.rank() == m1, "rank Θ ≠ m(1)")?;
    if l == n - 2 {
        check(m1 == n - 2, "m(1) ≠ n − 2 for l = n − 2")?;
    }
    if form.b.is_positive() {
        check(k >= r, "k < n − l for an l-positive matrix")?;
    }

    let perron = perron_data(km, DEFAULT_TOL)?;
    let canonical = canonical_descriptor(km);
    let alg_reduction = (l == n - 2).then(|| {
        if n == 2 {
            "a(M) = 0; no non-constant meromorphic functions".to_string()
        } else {
            format!(
                "algebraic reduction onto CP^{}, generic fiber bimeromorphic to the Kato surface of B = {}",
                n - 2,
                form.b.to_text()
            )
        }
    });
    Ok(InvariantReport {
        n,
        k,
        l,
        rank_r: r,
        betti,
        twisted_betti,
        euler,
        m1,
        kA_basis: theta.k_a,
        theta_basis: theta.basis,
        theta_index: theta.index,
        alg_dim: alg_dim(km),
        h0_tangent: hol_vf_dimension(km),
        h0_one_forms: 0,
        kodaira: canonical.kodaira.clone(),
        pi1_M: "ℤ".into(),
        pi1_M_minus_C: Pi1Complement {
            description: format!("ℤ ⋉ ℤ^{r}"),
            action: form.b.clone(),
        },
        perron_alpha: PerronAlpha {
            value: perron.value,
            exact: perron.exact.map(|s| s.to_string()),
            power_used: perron.power_used,
        },
        torus_rank: l,
        k_components: k,
        covering_degree_to_base: (l > 0).then_some(n - l - 1),
        canonical_descriptor: format!("{}; {}", canonical.descriptor, canonical.power_descriptor),
        anticanonical_h0: canonical.anticanonical_h0,
        alg_reduction,
        det: canonical.det,
        class_key: cyclic_normal_form(km.word()).to_string(),
    })
}

/// Number of sheets when the manifold of `cover` is a cyclic cover of the
/// manifold of `base` obtained from a power of its matrix.
pub fn covering_sheets(base: &InvariantReport, cover: &InvariantReport) -> Option<usize> {
    let b = FactorSeq::parse(&base.class_key).ok()?;
    let c = FactorSeq::parse(&cover.class_key).ok()?;
    cover_sheets(&b, &c)
}

impl InvariantReport {
    pub fn to_text(&self) -> String {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let lattice = |b: &LatticeBasis| {
            if b.rank() == 0 {
                "0".to_string()
            } else {
                b.rows()
                    .iter()
                    .map(|r| {
                        let items: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                        format!("({})", items.join(","))
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        };
        let mut out = vec![
            format!("class key            {}", self.class_key),
            format!("n, k, l              {}, {}, {}", self.n, self.k, self.l),
            format!("det                  {}", self.det),
            format!("rank r = n - l       {}", self.rank_r),
            format!("betti                [{}]", list(&self.betti)),
            format!("twisted betti        [{}]", list(&self.twisted_betti)),
            format!("euler                {}", self.euler),
            format!("m(1)                 {}", self.m1),
            format!("K_A                  {}", lattice(&self.kA_basis)),
            format!("theta                {}", lattice(&self.theta_basis)),
            format!("[K_A : theta]        {}", self.theta_index),
            format!(
                "algebraic dimension  {}",
                match self.alg_dim {
                    AlgDim::Exact(v) => v.to_string(),
                    AlgDim::Bounds(lo, hi) => format!("{lo}..={hi}"),
                }
            ),
            format!(
                "h0(TM)               {}",
                match self.h0_tangent {
                    HolVfDimension::Exact(v) => v.to_string(),
                    HolVfDimension::LowerBound(v) => format!(">= {v}"),
                }
            ),
            format!("h0(Omega^1)          {}", self.h0_one_forms),
            format!("kodaira dimension    {}", self.kodaira),
            format!("pi1(M)               {}", self.pi1_M),
            format!(
                "pi1(M - C)           {}, action {}",
                self.pi1_M_minus_C.description,
                self.pi1_M_minus_C.action.to_text()
            ),
            format!(
                "perron alpha         {:.12}{} (p = {})",
                self.perron_alpha.value,
                self.perron_alpha
                    .exact
                    .as_ref()
                    .map(|s| format!(" = {s}"))
                    .unwrap_or_default(),
                self.perron_alpha.power_used
            ),
            format!("torus rank           {}", self.torus_rank),
            format!("cycle components     {}", self.k_components),
        ];
        if let Some(d) = self.covering_degree_to_base {
            out.push(format!("covering degree      {d}"));
        }
        out.push(format!("canonical bundle     {}", self.canonical_descriptor));
        if let Some(h) = &self.anticanonical_h0 {
            out.push(format!("h0(K*)               {h}"));
        }
        if let Some(s) = &self.alg_reduction {
            out.push(format!("algebraic reduction  {s}"));
        }
        out.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(s: &str) -> InvariantReport {
        build_report(&IntMatrix::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn type_one_surface_example() {
        let r = report("1,0,2;0,0,1;0,1,2");
        assert_eq!((r.n, r.k, r.l, r.rank_r, r.euler, r.m1), (3, 2, 1, 2, 4, 1));
        assert_eq!(r.alg_dim, AlgDim::Exact(1));
        assert_eq!(r.h0_tangent, HolVfDimension::Exact(2));
        assert_eq!(r.pi1_M_minus_C.description, "ℤ ⋉ ℤ^2");
        assert_eq!(r.covering_degree_to_base, Some(1));
        assert_eq!(r.det, -1);
        assert!(r.anticanonical_h0.is_none());
        assert!(r.alg_reduction.is_some());
        assert_eq!(r.class_key, "n=3:[2,3]");
    }

    #[test]
    fn surface_example() {
        let r = report("0,1;1,2");
        assert_eq!((r.n, r.k, r.l, r.euler, r.m1), (2, 2, 0, 2, 0));
        assert_eq!(r.covering_degree_to_base, None);
        assert_eq!(r.perron_alpha.exact.as_deref(), Some("1+√2"));
    }

    #[test]
    fn json_roundtrip() {
        let r = report("1,0,2;0,0,1;0,1,2");
        let j = serde_json::to_string(&r).unwrap();
        let back: InvariantReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), j);
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        for key in ["kA_basis", "theta_index", "pi1_M", "pi1_M_minus_C", "perron_alpha"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v.get("anticanonical_h0").is_none());
    }

    #[test]
    fn powers_are_covers() {
        let km = KatoMatrix::new(IntMatrix::parse("1,0,2;0,0,1;0,1,2").unwrap()).unwrap();
        let base = build_report_for(&km).unwrap();
        let cube = build_report_for(&km.power(3).unwrap()).unwrap();
        assert_eq!(cube.k, 3 * base.k);
        assert_eq!((cube.l, cube.rank_r), (base.l, base.rank_r));
        assert_eq!(covering_sheets(&base, &cube), Some(3));
        assert_eq!(covering_sheets(&cube, &base), None);
    }

    #[test]
    fn text_rendering_mentions_every_section() {
        let t = report("1,0,2;0,0,1;0,1,2").to_text();
        assert!(t.contains("euler                4"));
        assert!(t.contains("algebraic reduction"));
    }
}
