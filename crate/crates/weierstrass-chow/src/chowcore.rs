//! Domain layer: the torus-action catalog for the Weierstrass-point stacks
//! and their rational-curve counterparts, the presentation builder for the
//! equivariant Chow ring of the discriminant complement, hyperplane and
//! psi classes, and the source rings used by the homomorphism checks.

use crate::exactpoly::{PolyError, Polynomial, RingSpec};
use crate::zideal::IdealZ;
use crate::zlattice::{IntegerMatrix, LatticeError, PicardGroup};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ChowError {
    #[error("n must be between 1 and 3 for the torus-model catalog")]
    UnsupportedMarking,
    #[error("genus must be at least 2")]
    GenusTooSmall,
    #[error("psi classes are only defined for the Weierstrass family")]
    PsiOnGerbeSide,
    #[error("hyperplane index out of range")]
    IndexOutOfRange,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The two towers of the paper: `H` marks Weierstrass points on
/// hyperelliptic curves, `M0` marks points on the rational quotient curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    H,
    M0,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family, ChowError> {
        match s {
            "H" | "h" => Ok(Family::H),
            "M0" | "m0" => Ok(Family::M0),
            other => Err(ChowError::UnknownFamily(other.to_string())),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::H => "H",
            Family::M0 => "M0",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Weights of a (rank-1 or rank-2) torus action
/// `(t0,t1) . f = t0^a t1^b f(t0^-alpha0 t1^-alpha1 x0, t0^-beta0 t1^-beta1 x1)`
/// on the space of binary forms of degree `n_forms`. Rank-1 actions zero
/// the second component of every weight pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusActionSpec {
    pub rank: u8,
    pub n_forms: i64,
    pub twist: (i64, i64),
    pub x0_weights: (i64, i64),
    pub x1_weights: (i64, i64),
}

impl TorusActionSpec {
    pub fn ring(&self) -> Arc<RingSpec> {
        match self.rank {
            1 => RingSpec::l(),
            _ => RingSpec::l1_l2(),
        }
    }

    fn linear(&self, c1: i64, c2: i64) -> Polynomial {
        let ring = self.ring();
        match self.rank {
            1 => Polynomial::linear(&ring, &[c1]),
            _ => Polynomial::linear(&ring, &[c1, c2]),
        }
    }

    /// First Chern classes of the characters scaling x0 and x1.
    pub fn character_classes(&self) -> CharacterClasses {
        CharacterClasses {
            t1: self.linear(self.x0_weights.0, self.x0_weights.1),
            t2: self.linear(self.x1_weights.0, self.x1_weights.1),
        }
    }

    /// The image of the projective hyperplane class after trivializing the
    /// global scaling: a*l1 + b*l2.
    pub fn xi_image(&self) -> Polynomial {
        self.linear(self.twist.0, self.twist.1)
    }
}

#[derive(Debug, Clone)]
pub struct CharacterClasses {
    pub t1: Polynomial,
    pub t2: Polynomial,
}

/// The catalog of torus actions computing `A*` of each stack instance.
pub fn action_catalog(family: Family, g: i64, n: u32) -> Result<TorusActionSpec, ChowError> {
    if g < 2 {
        return Err(ChowError::GenusTooSmall);
    }
    let even = g % 2 == 0;
    let spec = match (family, n) {
        (Family::H, 1) if even => TorusActionSpec {
            rank: 2,
            n_forms: 2 * g + 1,
            twist: (g - 1, g),
            x0_weights: (1, 0),
            x1_weights: (0, 1),
        },
        (Family::H, 1) => TorusActionSpec {
            rank: 2,
            n_forms: 2 * g + 1,
            twist: (-2, g),
            x0_weights: (0, 1),
            x1_weights: (0, 0),
        },
        (Family::M0, 1) => TorusActionSpec {
            rank: 2,
            n_forms: 2 * g + 1,
            twist: (-1, g),
            x0_weights: (0, 1),
            x1_weights: (0, 0),
        },
        (Family::H, 2) if even => TorusActionSpec {
            rank: 2,
            n_forms: 2 * g,
            twist: (g - 1, g - 1),
            x0_weights: (1, 0),
            x1_weights: (0, 1),
        },
        (Family::H, 2) => TorusActionSpec {
            rank: 2,
            n_forms: 2 * g,
            twist: (-2, g),
            x0_weights: (0, 1),
            x1_weights: (0, 0),
        },
        (Family::M0, 2) => TorusActionSpec {
            rank: 2,
            n_forms: 2 * g,
            twist: (-1, g),
            x0_weights: (0, 1),
            x1_weights: (0, 0),
        },
        (Family::H, 3) => TorusActionSpec {
            rank: 1,
            n_forms: 2 * g - 1,
            twist: (-2, 0),
            x0_weights: (0, 0),
            x1_weights: (0, 0),
        },
        (Family::M0, 3) => TorusActionSpec {
            rank: 1,
            n_forms: 2 * g - 1,
            twist: (-1, 0),
            x0_weights: (0, 0),
            x1_weights: (0, 0),
        },
        _ => return Err(ChowError::UnsupportedMarking),
    };
    Ok(spec)
}

/// Presentation of an equivariant Chow ring: homogeneous relations over the
/// character ring, degree-one relations first, plus named linear classes.
#[derive(Debug, Clone)]
pub struct ChowPresentation {
    ring: Arc<RingSpec>,
    relations: Vec<Polynomial>,
    distinguished: BTreeMap<String, Polynomial>,
}

impl ChowPresentation {
    fn new(
        ring: Arc<RingSpec>,
        mut relations: Vec<Polynomial>,
        distinguished: BTreeMap<String, Polynomial>,
    ) -> ChowPresentation {
        // stable sort: degree-one relations first, original order otherwise
        relations.sort_by_key(|r| match r.weighted_degree() {
            Ok(crate::exactpoly::Degree::Homogeneous(d)) => d,
            _ => u64::MAX,
        });
        ChowPresentation {
            ring,
            relations,
            distinguished,
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn distinguished(&self) -> &BTreeMap<String, Polynomial> {
        &self.distinguished
    }

    pub fn degree_one_relations(&self) -> Vec<&Polynomial> {
        self.relations
            .iter()
            .filter(|r| {
                matches!(
                    r.weighted_degree(),
                    Ok(crate::exactpoly::Degree::Homogeneous(1))
                )
            })
            .collect()
    }

    pub fn higher_relations(&self) -> Vec<&Polynomial> {
        self.relations
            .iter()
            .filter(|r| {
                !matches!(
                    r.weighted_degree(),
                    Ok(crate::exactpoly::Degree::Homogeneous(1))
                )
            })
            .collect()
    }

    /// Coefficient matrix of the degree-one relations, one row per relation.
    pub fn degree_one_matrix(&self) -> Result<IntegerMatrix, ChowError> {
        let rows: Vec<Vec<BigInt>> = self
            .degree_one_relations()
            .iter()
            .map(|r| r.linear_coefficients().expect("degree-one relation"))
            .collect();
        Ok(IntegerMatrix::from_rows(rows).map_err(ChowError::Lattice)?)
    }
}

/// Presentation of the equivariant Chow ring of the complement of the
/// discriminant in the space of binary forms of degree N, with the
/// hyperplane class already substituted.
pub fn discriminant_presentation(action: &TorusActionSpec) -> Result<ChowPresentation, ChowError> {
    let ring = action.ring();
    let n = action.n_forms;
    let xi = action.xi_image();
    let CharacterClasses { t1, t2 } = action.character_classes();
    let t_sum = t1.add(&t2)?;

    // alpha_{1,0} = 2(N-1)xi - N(N-1)(T1+T2)
    let alpha10 = xi
        .scale(&BigInt::from(2 * (n - 1)))
        .sub(&t_sum.scale(&BigInt::from(n * (n - 1))))?;
    // alpha_{1,1} = xi^2 - (T1+T2)xi - N(N-2) T1 T2
    let alpha11 = xi
        .mul(&xi)?
        .sub(&t_sum.mul(&xi)?)?
        .sub(&t1.mul(&t2)?.scale(&BigInt::from(n * (n - 2))))?;
    // p = prod_{i=0}^{N} [xi - (N-i)T1 - i T2]
    let mut p = Polynomial::constant(&ring, 1);
    for i in 0..=n {
        let factor = xi
            .sub(&t1.scale(&BigInt::from(n - i)))?
            .sub(&t2.scale(&BigInt::from(i)))?;
        p = p.mul(&factor)?;
    }

    let mut distinguished = BTreeMap::new();
    distinguished.insert("xi".to_string(), xi);
    Ok(ChowPresentation::new(
        ring,
        vec![alpha10, alpha11, p],
        distinguished,
    ))
}

/// Equivariant fundamental class of the coordinate hyperplane where the
/// coefficient of x0^(N-i) x1^i vanishes: the first Chern class of the
/// character by which that coordinate transforms.
pub fn hyperplane_class(action: &TorusActionSpec, i: i64) -> Result<Polynomial, ChowError> {
    let n = action.n_forms;
    if i < 0 || i > n {
        return Err(ChowError::IndexOutOfRange);
    }
    let (a, b) = action.twist;
    let (a0, a1) = action.x0_weights;
    let (b0, b1) = action.x1_weights;
    Ok(action.linear(a - (n - i) * a0 - i * b0, b - (n - i) * a1 - i * b1))
}

/// Quotient by the classes of the removed hyperplanes: the localization
/// sequence extends the relation list by the hyperplane classes.
pub fn localize(
    pres: &ChowPresentation,
    hyperplanes: &[Polynomial],
) -> Result<ChowPresentation, ChowError> {
    for h in hyperplanes {
        if h.ring() != pres.ring() {
            return Err(ChowError::Poly(PolyError::RingMismatch));
        }
        if !matches!(
            h.weighted_degree(),
            Ok(crate::exactpoly::Degree::Homogeneous(1))
        ) {
            return Err(ChowError::Poly(PolyError::GradingViolation {
                var: "hyperplane".to_string(),
                expected: 1,
            }));
        }
    }
    let mut relations = pres.relations.clone();
    relations.extend(hyperplanes.iter().cloned());
    Ok(ChowPresentation::new(
        pres.ring.clone(),
        relations,
        pres.distinguished.clone(),
    ))
}

/// Hyperplane classes removed for a given number of marked points:
/// n = 1 removes L (coefficient of x1^N), n = 2 removes L0 and L_inf,
/// n = 3 removes L0, L1, L_inf (all equal for the rank-1 actions).
pub fn marked_hyperplanes(action: &TorusActionSpec, n: u32) -> Result<Vec<Polynomial>, ChowError> {
    let nn = action.n_forms;
    match n {
        1 => Ok(vec![hyperplane_class(action, nn)?]),
        2 => Ok(vec![
            hyperplane_class(action, nn)?,
            hyperplane_class(action, 0)?,
        ]),
        3 => {
            // rank-1 actions: every coordinate hyperplane has the same class
            let h = hyperplane_class(action, 0)?;
            Ok(vec![h.clone(), h.clone(), h])
        }
        _ => Err(ChowError::UnsupportedMarking),
    }
}

/// Full pipeline: catalog action, discriminant presentation, localization
/// at the marked hyperplanes.
pub fn presentation_for(family: Family, g: i64, n: u32) -> Result<ChowPresentation, ChowError> {
    let action = action_catalog(family, g, n)?;
    let pres = discriminant_presentation(&action)?;
    let hyperplanes = marked_hyperplanes(&action, n)?;
    localize(&pres, &hyperplanes)
}

/// Marked sections carrying a psi class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MarkedSection {
    /// the section at (0:1)
    S0,
    /// the section at (1:1) (only present for n = 3)
    S1,
    /// the section at (1:0)
    SInf,
}

#[derive(Debug, Clone)]
pub struct PsiClassSpec {
    pub family: Family,
    pub g: i64,
    pub n: u32,
    pub section: MarkedSection,
    pub class: Polynomial,
}

/// Catalog of psi-class restrictions to the Weierstrass loci. Only the
/// Weierstrass family carries psi classes; for n = 1 the single section is
/// `S0`.
pub fn psi_class(
    family: Family,
    g: i64,
    n: u32,
    section: MarkedSection,
) -> Result<PsiClassSpec, ChowError> {
    if family == Family::M0 {
        return Err(ChowError::PsiOnGerbeSide);
    }
    if g < 2 {
        return Err(ChowError::GenusTooSmall);
    }
    let even = g % 2 == 0;
    let ring2 = RingSpec::l1_l2();
    let class = match (n, section, even) {
        (1, MarkedSection::S0, true) => {
            // -(g/2) l1 + ((g+2)/2) l2
            Polynomial::linear(&ring2, &[-(g / 2), (g + 2) / 2])
        }
        (1, MarkedSection::S0, false) => {
            // l1 - ((g+1)/2) l2
            Polynomial::linear(&ring2, &[1, -((g + 1) / 2)])
        }
        (2, MarkedSection::SInf, true) => Polynomial::linear(&ring2, &[-(g / 2), (g + 2) / 2]),
        (2, MarkedSection::S0, true) => Polynomial::linear(&ring2, &[(g + 2) / 2, -(g / 2)]),
        (2, MarkedSection::SInf, false) => Polynomial::linear(&ring2, &[1, (g + 1) / 2]),
        (2, MarkedSection::S0, false) => Polynomial::linear(&ring2, &[1, -((g + 1) / 2)]),
        (3, _, _) => Polynomial::linear(&RingSpec::l(), &[-1]),
        _ => return Err(ChowError::UnsupportedMarking),
    };
    Ok(PsiClassSpec {
        family,
        g,
        n,
        section,
        class,
    })
}

/// The canonical generator vector used for the Picard-group report: the
/// psi class for the Weierstrass family, the paper's generator
/// l = -l1 + (g+1) l2 for the rational family.
pub fn picard_generator(family: Family, g: i64, n: u32) -> Result<(String, Vec<BigInt>), ChowError> {
    match (family, n) {
        (Family::H, 1) => {
            let psi = psi_class(family, g, n, MarkedSection::S0)?;
            Ok((
                "psi".to_string(),
                psi.class.linear_coefficients().unwrap(),
            ))
        }
        (Family::H, 2) => {
            let psi = psi_class(family, g, n, MarkedSection::SInf)?;
            Ok((
                "psi_inf".to_string(),
                psi.class.linear_coefficients().unwrap(),
            ))
        }
        (Family::H, 3) => {
            let psi = psi_class(family, g, n, MarkedSection::S0)?;
            Ok((
                "psi".to_string(),
                psi.class.linear_coefficients().unwrap(),
            ))
        }
        (Family::M0, 1) | (Family::M0, 2) => {
            Ok(("l".to_string(), vec![BigInt::from(-1), BigInt::from(g + 1)]))
        }
        (Family::M0, 3) => Ok(("l".to_string(), vec![BigInt::from(-1)])),
        _ => Err(ChowError::UnsupportedMarking),
    }
}

/// Picard group of an instance: quotient of the character lattice by the
/// degree-one relations, reported against the canonical generator.
pub fn picard_for(family: Family, g: i64, n: u32) -> Result<PicardGroup, ChowError> {
    let pres = presentation_for(family, g, n)?;
    let matrix = pres.degree_one_matrix()?;
    let (_, generator) = picard_generator(family, g, n)?;
    Ok(PicardGroup::compute(&matrix, generator)?)
}

/// The known integral Chow ring of the unmarked hyperelliptic stack,
/// together with the variable images of the restriction homomorphism to
/// the one-pointed Weierstrass stack.
pub struct HgSourceRing {
    pub ring: Arc<RingSpec>,
    pub ideal: IdealZ,
    /// (variable name, image in Z[l1, l2])
    pub images: Vec<(String, Polynomial)>,
    /// the degree-one generator and its expected order in the target
    pub degree_one_generator: String,
    pub degree_one_order: BigInt,
}

pub fn hg_source_ring(g: i64) -> Result<HgSourceRing, ChowError> {
    if g < 2 {
        return Err(ChowError::GenusTooSmall);
    }
    let target = RingSpec::l1_l2();
    let l1 = Polynomial::var(&target, "l1")?;
    let l2 = Polynomial::var(&target, "l2")?;
    if g % 2 == 0 {
        let ring = RingSpec::c1_c2();
        let c1 = Polynomial::var(&ring, "c1")?;
        let c2 = Polynomial::var(&ring, "c2")?;
        let gens = vec![
            c1.scale(&BigInt::from(2 * (2 * g + 1))),
            c1.pow(2)
                .scale(&BigInt::from(g * (g - 1)))
                .sub(&c2.scale(&BigInt::from(4 * g * (g + 1))))?,
        ];
        Ok(HgSourceRing {
            ideal: IdealZ::new(&ring, gens).expect("homogeneous generators"),
            ring,
            images: vec![
                ("c1".to_string(), l1.add(&l2)?),
                ("c2".to_string(), l1.mul(&l2)?),
            ],
            degree_one_generator: "c1".to_string(),
            degree_one_order: BigInt::from(2 * (2 * g + 1)),
        })
    } else {
        let ring = RingSpec::tau_c2_c3();
        let tau = Polynomial::var(&ring, "tau")?;
        let c2 = Polynomial::var(&ring, "c2")?;
        let c3 = Polynomial::var(&ring, "c3")?;
        let gens = vec![
            tau.scale(&BigInt::from(4 * (2 * g + 1))),
            tau.pow(2)
                .scale(&BigInt::from(8))
                .sub(&c2.scale(&BigInt::from(2 * g * (g + 1))))?,
            c3.scale(&BigInt::from(2)),
        ];
        Ok(HgSourceRing {
            ideal: IdealZ::new(&ring, gens).expect("homogeneous generators"),
            ring,
            images: vec![
                ("tau".to_string(), l1.clone()),
                ("c2".to_string(), l2.pow(2).neg()),
                ("c3".to_string(), Polynomial::zero(&target)),
            ],
            degree_one_generator: "tau".to_string(),
            degree_one_order: BigInt::from(4 * (2 * g + 1)),
        })
    }
}

/// The explicit degree-(2g+3) polynomial whose class cuts out the
/// rational-curve quotient with no marked points, expanded in
/// Z[tau, c2, c3].
pub fn thm12_polynomial(g: i64) -> Result<Polynomial, ChowError> {
    if g < 2 {
        return Err(ChowError::GenusTooSmall);
    }
    let ring = RingSpec::tau_c2_c3();
    let tau = Polynomial::var(&ring, "tau")?;
    let c2 = Polynomial::var(&ring, "c2")?;
    let c3 = Polynomial::var(&ring, "c3")?;
    let tau_sq_plus_c2 = tau.pow(2).add(&c2)?;
    let cubic = tau.pow(3).add(&tau.mul(&c2)?)?.sub(&c3)?;
    let p = if g % 2 == 0 {
        // g(g+2) tau^{g+1} (tau^2+c2)^{g/2} c2 + tau^{g/2} (tau^3+tau c2-c3)^{(g+2)/2}
        tau.pow((g + 1) as u32)
            .scale(&BigInt::from(g * (g + 2)))
            .mul(&tau_sq_plus_c2.pow((g / 2) as u32))?
            .mul(&c2)?
            .add(&tau.pow((g / 2) as u32).mul(&cubic.pow(((g + 2) / 2) as u32))?)?
    } else {
        // (g+1)^2 tau^g (tau^2+c2)^{(g+1)/2} c2 + tau^{(g+3)/2} (tau^3+tau c2-c3)^{(g+1)/2}
        tau.pow(g as u32)
            .scale(&BigInt::from((g + 1) * (g + 1)))
            .mul(&tau_sq_plus_c2.pow(((g + 1) / 2) as u32))?
            .mul(&c2)?
            .add(
                &tau.pow(((g + 3) / 2) as u32)
                    .mul(&cubic.pow(((g + 1) / 2) as u32))?,
            )?
    };
    Ok(p)
}

/// The ambient relation ideal of Theorem thm.m2g+2's presentation, without
/// the extra polynomial class.
pub fn m0_unmarked_ideal(g: i64) -> Result<IdealZ, ChowError> {
    let ring = RingSpec::tau_c2_c3();
    let tau = Polynomial::var(&ring, "tau")?;
    let c2 = Polynomial::var(&ring, "c2")?;
    let c3 = Polynomial::var(&ring, "c3")?;
    let gens = vec![
        tau.pow(2)
            .scale(&BigInt::from(2))
            .sub(&c2.scale(&BigInt::from(2 * g * (g + 1))))?,
        tau.scale(&BigInt::from(2 * (2 * g + 1))),
        c3.scale(&BigInt::from(2)),
    ];
    Ok(IdealZ::new(&ring, gens).expect("homogeneous generators"))
}

/// JSON form of a presentation, using the canonical polynomial text.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationJson {
    pub family: String,
    pub g: i64,
    pub n: u32,
    pub rank: u8,
    pub variables: Vec<VariableJson>,
    pub relations: Vec<String>,
    pub distinguished: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VariableJson {
    pub name: String,
    pub weight: u64,
}

pub fn presentation_json(family: Family, g: i64, n: u32) -> Result<PresentationJson, ChowError> {
    let action = action_catalog(family, g, n)?;
    let pres = presentation_for(family, g, n)?;
    Ok(PresentationJson {
        family: family.as_str().to_string(),
        g,
        n,
        rank: action.rank,
        variables: pres
            .ring()
            .vars()
            .map(|(name, weight)| VariableJson {
                name: name.to_string(),
                weight,
            })
            .collect(),
        relations: pres.relations().iter().map(|r| r.to_string()).collect(),
        distinguished: pres
            .distinguished()
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect(),
    })
}

/// JSON form of a Picard-group report; orders are decimal strings so that
/// arbitrarily large values survive the round trip.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PicardJson {
    pub family: String,
    pub g: i64,
    pub n: u32,
    pub invariant_factors: Vec<String>,
    pub generator_name: String,
    pub generator: Vec<String>,
    pub order: String,
    pub generator_order: String,
}

pub fn picard_json(family: Family, g: i64, n: u32) -> Result<PicardJson, ChowError> {
    let pic = picard_for(family, g, n)?;
    let (generator_name, _) = picard_generator(family, g, n)?;
    Ok(PicardJson {
        family: family.as_str().to_string(),
        g,
        n,
        invariant_factors: pic
            .invariant_factors
            .iter()
            .map(|f| f.to_string())
            .collect(),
        generator_name,
        generator: pic.generator.iter().map(|x| x.to_string()).collect(),
        order: pic.order().to_string(),
        generator_order: pic.generator_order.to_string(),
    })
}
