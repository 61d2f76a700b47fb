//! Generalized kites `K(L, λ)` over rational vector ℓ-groups.
//!
//! An element is a zone tag with a group value. `Top` holds the negative
//! cone (containing `1 = (Top, e)`), `Bottom` holds the positive cone
//! (containing `0 = (Bottom, e)`), and every Bottom element lies below every
//! Top element. The group is abelian, so it is written additively here.

pub mod checks;
pub mod homs;
pub mod pprod;
pub mod sampler;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::bcycle::{BCycle, BCycleError};
use crate::lgrp::{Domain, LAut, LVec, LgrpError, VecGroup};

pub use checks::ZoneCases;
pub use homs::KiteHom;
pub use pprod::{PProdKite, PProdKiteElem, PowerBijection};
pub use sampler::Sampler;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KiteError {
    #[error(transparent)]
    Lgrp(#[from] LgrpError),
    #[error(transparent)]
    BCycle(#[from] BCycleError),
    #[error("{value} is not in the {zone} cone")]
    WrongCone { zone: Zone, value: String },
    #[error("cannot parse `{input}`: {message}")]
    Parse { input: String, message: String },
    #[error("maps do not commute with the automorphisms at basis vector {basis}")]
    Commutation { basis: usize },
    #[error("maps do not commute with double negation at {witness}")]
    DoubleTildeCommutation { witness: String },
    #[error("not a homomorphism: {0}")]
    NotAHom(String),
    #[error("zones are not aligned across coordinates")]
    MisalignedZones,
    #[error("the kite is not built over a B-cycle")]
    NoBCycle,
}

fn parse_err(input: &str, message: impl Into<String>) -> KiteError {
    KiteError::Parse {
        input: input.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Zone {
    /// The copy of `L⁻`, the filter.
    Top,
    /// The copy of `L⁺`, the ideal.
    Bottom,
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Zone::Top => "top",
            Zone::Bottom => "bot",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KiteElem {
    pub zone: Zone,
    pub value: LVec,
}

impl KiteElem {
    pub fn top(value: LVec) -> KiteElem {
        KiteElem {
            zone: Zone::Top,
            value,
        }
    }

    pub fn bottom(value: LVec) -> KiteElem {
        KiteElem {
            zone: Zone::Bottom,
            value,
        }
    }
}

impl fmt::Display for KiteElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.zone, self.value)
    }
}

/// Which kite this is, for the checks that need the B-cycle structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BCycleOrigin {
    pub cycle: BCycle,
    pub base: VecGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KiteAlgebra {
    group: VecGroup,
    lambda: LAut,
    lambda_inv: LAut,
    origin: Option<BCycleOrigin>,
}

impl KiteAlgebra {
    pub fn new(group: VecGroup, lambda: LAut) -> Result<KiteAlgebra, KiteError> {
        lambda.check_on(&group)?;
        let lambda_inv = lambda.invert();
        Ok(KiteAlgebra {
            group,
            lambda,
            lambda_inv,
            origin: None,
        })
    }

    /// `K_B(L)`: the kite on `L^B` with `λ(x)(i) = x(β(i))`.
    pub fn over_bcycle(cycle: &BCycle, base: &VecGroup) -> KiteAlgebra {
        let mut k = KiteAlgebra::new(base.power(cycle.size()), cycle.induced_aut(base))
            .expect("coordinate permutations are automorphisms");
        k.origin = Some(BCycleOrigin {
            cycle: cycle.clone(),
            base: base.clone(),
        });
        k
    }

    pub fn group(&self) -> &VecGroup {
        &self.group
    }

    pub fn lambda(&self) -> &LAut {
        &self.lambda
    }

    pub fn origin(&self) -> Option<&BCycleOrigin> {
        self.origin.as_ref()
    }

    pub fn arity(&self) -> usize {
        self.group.arity()
    }

    /// Builds an element, checking the group and the zone's cone.
    pub fn element(&self, zone: Zone, value: LVec) -> Result<KiteElem, KiteError> {
        self.group.check(&value)?;
        let ok = match zone {
            Zone::Top => value.is_negative_cone(),
            Zone::Bottom => value.is_positive_cone(),
        };
        if !ok {
            return Err(KiteError::WrongCone {
                zone,
                value: value.to_string(),
            });
        }
        Ok(KiteElem { zone, value })
    }

    pub fn contains(&self, x: &KiteElem) -> bool {
        self.element(x.zone, x.value.clone()).is_ok()
    }

    /// `0`, `1`, `top:[..]` or `bot:[..]`.
    pub fn parse_element(&self, text: &str) -> Result<KiteElem, KiteError> {
        let t = text.trim();
        match t {
            "0" => return Ok(self.zero()),
            "1" => return Ok(self.one()),
            _ => {}
        }
        let (zone, rest) = if let Some(r) = t.strip_prefix("top:") {
            (Zone::Top, r)
        } else if let Some(r) = t.strip_prefix("bot:") {
            (Zone::Bottom, r)
        } else {
            return Err(parse_err(text, "expected 0, 1, top:[..] or bot:[..]"));
        };
        self.element(zone, rest.parse()?)
    }

    /// `x^∼∼`
    pub fn double_tilde(&self, x: &KiteElem) -> KiteElem {
        self.negr(&self.negr(x))
    }

    /// The dimension of the double-negation automorphism. λ is read back
    /// from `(Top, -e_j)^∼∼ = (Top, -λ(e_j))` and its order computed.
    pub fn dim_pmv(&self) -> u64 {
        let k = self.arity();
        let images: Vec<LVec> = (0..k)
            .map(|j| {
                let x = KiteElem::top(-&LVec::basis(k, j));
                -&self.double_tilde(&x).value
            })
            .collect();
        let recovered = LAut::from_basis_images(&images).expect("double tilde is monomial");
        debug_assert_eq!(recovered, self.lambda);
        recovered.dimension()
    }

    pub fn spec_string(&self) -> String {
        match &self.origin {
            Some(o) => format!(
                "kite{{bcycle:{}; base:{}}}",
                o.cycle,
                base_string(&o.base)
            ),
            None => format!("kite{{group:{}; aut:{}}}", self.group, self.lambda),
        }
    }
}

fn base_string(g: &VecGroup) -> String {
    let d = match g.domain() {
        Domain::Integer => "Z",
        Domain::Rational => "Q",
    };
    if g.arity() == 1 {
        d.to_string()
    } else {
        format!("{d}^{}", g.arity())
    }
}

impl FromStr for KiteAlgebra {
    type Err = KiteError;

    /// `kite{group:Q^k|Z^k; aut:<aut spec>}` or
    /// `kite{bcycle:<cycle spec>; base:Q|Z}`. The aut spec may itself
    /// contain `;`, as in `aut:perm:(0 1);scale:2`.
    fn from_str(spec: &str) -> Result<KiteAlgebra, KiteError> {
        let t = spec.trim();
        let body = t
            .strip_prefix("kite{")
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| parse_err(spec, "expected kite{...}"))?;
        let (mut group, mut aut, mut cycle, mut base) = (None, None::<String>, None, None);
        for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            if let Some(g) = part.strip_prefix("group:") {
                group = Some(g.parse::<VecGroup>()?);
            } else if let Some(a) = part.strip_prefix("aut:") {
                aut = Some(a.to_string());
            } else if part.starts_with("perm:") || part.starts_with("scale:") {
                let a = aut.get_or_insert_with(String::new);
                a.push(';');
                a.push_str(part);
            } else if let Some(c) = part.strip_prefix("bcycle:") {
                cycle = Some(BCycle::parse(c)?);
            } else if let Some(b) = part.strip_prefix("base:") {
                base = Some(b.parse::<VecGroup>()?);
            } else {
                return Err(parse_err(spec, format!("unknown field `{part}`")));
            }
        }
        match (group, cycle) {
            (Some(g), None) if base.is_none() => {
                let lambda = LAut::parse(aut.as_deref().unwrap_or("id"), g.arity())?;
                KiteAlgebra::new(g, lambda)
            }
            (None, Some(c)) if aut.is_none() => {
                let base = base.unwrap_or_else(|| VecGroup::integer(1));
                Ok(KiteAlgebra::over_bcycle(&c, &base))
            }
            _ => Err(parse_err(
                spec,
                "give either group and aut, or bcycle and base",
            )),
        }
    }
}

impl Algebra for KiteAlgebra {
    type Elem = KiteElem;

    fn meet(&self, x: &KiteElem, y: &KiteElem) -> KiteElem {
        match (x.zone, y.zone) {
            (Zone::Top, Zone::Top) => KiteElem::top(x.value.meet(&y.value)),
            (Zone::Bottom, Zone::Bottom) => KiteElem::bottom(x.value.meet(&y.value)),
            (Zone::Bottom, Zone::Top) => x.clone(),
            (Zone::Top, Zone::Bottom) => y.clone(),
        }
    }

    fn join(&self, x: &KiteElem, y: &KiteElem) -> KiteElem {
        match (x.zone, y.zone) {
            (Zone::Top, Zone::Top) => KiteElem::top(x.value.join(&y.value)),
            (Zone::Bottom, Zone::Bottom) => KiteElem::bottom(x.value.join(&y.value)),
            (Zone::Bottom, Zone::Top) => y.clone(),
            (Zone::Top, Zone::Bottom) => x.clone(),
        }
    }

    fn mul(&self, x: &KiteElem, y: &KiteElem) -> KiteElem {
        match (x.zone, y.zone) {
            (Zone::Top, Zone::Top) => KiteElem::top(&x.value + &y.value),
            (Zone::Top, Zone::Bottom) => {
                KiteElem::bottom((&self.lambda.apply(&x.value) + &y.value).join_zero())
            }
            (Zone::Bottom, Zone::Top) => KiteElem::bottom((&x.value + &y.value).join_zero()),
            (Zone::Bottom, Zone::Bottom) => self.zero(),
        }
    }

    /// `x\y`
    fn ldiv(&self, x: &KiteElem, y: &KiteElem) -> KiteElem {
        match (x.zone, y.zone) {
            (Zone::Top, Zone::Top) | (Zone::Bottom, Zone::Bottom) => {
                KiteElem::top((&y.value - &x.value).meet_zero())
            }
            (Zone::Bottom, Zone::Top) => self.one(),
            (Zone::Top, Zone::Bottom) => {
                KiteElem::bottom((&y.value - &self.lambda.apply(&x.value)).join_zero())
            }
        }
    }

    /// `y/x`
    fn rdiv(&self, y: &KiteElem, x: &KiteElem) -> KiteElem {
        match (x.zone, y.zone) {
            (Zone::Top, Zone::Top) => KiteElem::top((&y.value - &x.value).meet_zero()),
            (Zone::Bottom, Zone::Top) => self.one(),
            (Zone::Top, Zone::Bottom) => KiteElem::bottom((&y.value - &x.value).join_zero()),
            (Zone::Bottom, Zone::Bottom) => {
                KiteElem::top(self.lambda_inv.apply(&(&y.value - &x.value)).meet_zero())
            }
        }
    }

    fn zero(&self) -> KiteElem {
        KiteElem::bottom(self.group.identity())
    }

    fn one(&self) -> KiteElem {
        KiteElem::top(self.group.identity())
    }

    fn leq(&self, x: &KiteElem, y: &KiteElem) -> bool {
        match (x.zone, y.zone) {
            (Zone::Bottom, Zone::Top) => true,
            (Zone::Top, Zone::Bottom) => false,
            _ => x.value.leq(&y.value),
        }
    }

    /// `x⁻`: `(Top, x) ↦ (Bottom, -x)`, `(Bottom, x) ↦ (Top, -λ⁻¹(x))`.
    fn negl(&self, x: &KiteElem) -> KiteElem {
        match x.zone {
            Zone::Top => KiteElem::bottom(-&x.value),
            Zone::Bottom => KiteElem::top(-&self.lambda_inv.apply(&x.value)),
        }
    }

    /// `x^∼`: `(Top, x) ↦ (Bottom, -λ(x))`, `(Bottom, x) ↦ (Top, -x)`.
    fn negr(&self, x: &KiteElem) -> KiteElem {
        match x.zone {
            Zone::Top => KiteElem::bottom(-&self.lambda.apply(&x.value)),
            Zone::Bottom => KiteElem::top(-&x.value),
        }
    }
}
