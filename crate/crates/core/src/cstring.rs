//! String C-groups: generating tuples of involutions with the string
//! condition and the intersection property, their duals, isomorphism, and
//! unravelledness with respect to normal subgroups.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::engine::{EngineError, FiniteGroup, Perm, Quotient};
use crate::Caps;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CStringError {
    #[error("tuples have different ranks ({0} and {1})")]
    RankMismatch(usize, usize),
    #[error("a string needs at least one generator")]
    Empty,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Orders of consecutive generator products.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchlafliSymbol(pub Vec<u64>);

impl fmt::Display for SchlafliSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IpMode {
    /// Every pair of generator subsets.
    Brute,
    /// Facets, vertex-figures and their common intersection, recursively.
    Recursive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    Involutions,
    Distinct,
    Generation,
    StringCondition,
    IntersectionProperty,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Involutions => "involutions",
            Axiom::Distinct => "distinct",
            Axiom::Generation => "generation",
            Axiom::StringCondition => "string_condition",
            Axiom::IntersectionProperty => "intersection_property",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CStringReport {
    pub rank: usize,
    pub group_order: u128,
    pub generated_order: u128,
    pub involutions: bool,
    pub distinct: bool,
    pub generates: bool,
    pub string_condition: bool,
    /// `None` when skipped because an earlier axiom failed.
    pub intersection_property: Option<bool>,
    pub schlafli: SchlafliSymbol,
}

impl CStringReport {
    pub fn failing_axiom(&self) -> Option<Axiom> {
        if !self.involutions {
            Some(Axiom::Involutions)
        } else if !self.distinct {
            Some(Axiom::Distinct)
        } else if !self.generates {
            Some(Axiom::Generation)
        } else if !self.string_condition {
            Some(Axiom::StringCondition)
        } else if self.intersection_property != Some(true) {
            Some(Axiom::IntersectionProperty)
        } else {
            None
        }
    }

    pub fn is_cstring(&self) -> bool {
        self.failing_axiom().is_none()
    }
}

pub struct CString {
    group: Rc<FiniteGroup>,
    gens: Vec<Perm>,
    caps: Caps,
    parabolics: RefCell<BTreeMap<u32, Rc<FiniteGroup>>>,
}

impl Clone for CString {
    fn clone(&self) -> Self {
        Self {
            group: self.group.clone(),
            gens: self.gens.clone(),
            caps: self.caps,
            parabolics: RefCell::new(self.parabolics.borrow().clone()),
        }
    }
}

impl fmt::Debug for CString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CString")
            .field("order", &self.group.order())
            .field("gens", &self.gens)
            .finish()
    }
}

impl CString {
    pub fn new(group: Rc<FiniteGroup>, gens: Vec<Perm>) -> Result<Self, CStringError> {
        Self::with_caps(group, gens, Caps::default())
    }

    pub fn with_caps(group: Rc<FiniteGroup>, gens: Vec<Perm>, caps: Caps) -> Result<Self, CStringError> {
        if gens.is_empty() {
            return Err(CStringError::Empty);
        }
        for g in &gens {
            if g.degree() != group.degree() {
                return Err(EngineError::DegreeMismatch {
                    expected: group.degree(),
                    found: g.degree(),
                }
                .into());
            }
        }
        Ok(Self {
            group,
            gens,
            caps,
            parabolics: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn group(&self) -> &Rc<FiniteGroup> {
        &self.group
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    fn full_mask(&self) -> u32 {
        (1u32 << self.rank()) - 1
    }

    /// `G_J` for the generator subset `J` given as a bitmask.
    pub fn parabolic(&self, mask: u32) -> Result<Rc<FiniteGroup>, CStringError> {
        if let Some(g) = self.parabolics.borrow().get(&mask) {
            return Ok(g.clone());
        }
        let gens: Vec<Perm> = (0..self.rank())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.gens[i].clone())
            .collect();
        let sub = Rc::new(self.group.subgroup(gens)?);
        self.parabolics.borrow_mut().insert(mask, sub.clone());
        Ok(sub)
    }

    /// Non-adjacent generators commute.
    pub fn string_condition(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (i + 2..n).all(|j| self.gens[i].commutes_with(&self.gens[j])))
    }

    pub fn schlafli(&self) -> SchlafliSymbol {
        SchlafliSymbol(
            self.gens
                .windows(2)
                .map(|w| w[0].then(&w[1]).order())
                .collect(),
        )
    }

    pub fn intersection_property(&self, mode: IpMode) -> Result<bool, CStringError> {
        match mode {
            IpMode::Brute => self.ip_brute(),
            IpMode::Recursive => {
                let mut memo = BTreeMap::new();
                self.ip_interval(0, self.rank(), &mut memo)
            }
        }
    }

    fn ip_brute(&self) -> Result<bool, CStringError> {
        let full = self.full_mask();
        for j in 1..full {
            for k in (j + 1)..full {
                if j & k == j || j & k == k {
                    continue;
                }
                let meet = self.parabolic(j)?.intersection(&*self.parabolic(k)?, self.caps.intersection)?;
                if meet.order() != self.parabolic(j & k)?.order() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn interval_mask(lo: usize, hi: usize) -> u32 {
        ((1u32 << hi) - 1) & !((1u32 << lo) - 1)
    }

    /// The property for the substring of generators `lo..hi`.
    fn ip_interval(
        &self,
        lo: usize,
        hi: usize,
        memo: &mut BTreeMap<(usize, usize), bool>,
    ) -> Result<bool, CStringError> {
        if hi - lo <= 1 {
            return Ok(true);
        }
        if let Some(&v) = memo.get(&(lo, hi)) {
            return Ok(v);
        }
        let ok = self.ip_interval(lo + 1, hi, memo)?
            && self.ip_interval(lo, hi - 1, memo)?
            && {
                let a = self.parabolic(Self::interval_mask(lo, hi - 1))?;
                let b = self.parabolic(Self::interval_mask(lo + 1, hi))?;
                let mid = self.parabolic(Self::interval_mask(lo + 1, hi - 1))?;
                a.intersection(&b, self.caps.intersection)?.order() == mid.order()
            };
        memo.insert((lo, hi), ok);
        Ok(ok)
    }

    pub fn verify(&self) -> Result<CStringReport, CStringError> {
        self.verify_with(IpMode::Recursive)
    }

    pub fn verify_with(&self, mode: IpMode) -> Result<CStringReport, CStringError> {
        let n = self.rank();
        let involutions = self.gens.iter().all(Perm::is_involution);
        let distinct = (0..n).all(|i| (i + 1..n).all(|j| self.gens[i] != self.gens[j]));
        let whole = self.parabolic(self.full_mask())?;
        let generates = whole.order() == self.group.order() && whole.is_certified();
        let string_condition = self.string_condition();
        let intersection_property = if involutions && distinct && string_condition {
            Some(self.intersection_property(mode)?)
        } else {
            None
        };
        Ok(CStringReport {
            rank: n,
            group_order: self.group.order(),
            generated_order: whole.order(),
            involutions,
            distinct,
            generates,
            string_condition,
            intersection_property,
            schlafli: self.schlafli(),
        })
    }

    /// The reversed string.
    pub fn dual(&self) -> CString {
        let mut gens = self.gens.clone();
        gens.reverse();
        let n = self.rank();
        let parabolics = self
            .parabolics
            .borrow()
            .iter()
            .map(|(&m, g)| (m.reverse_bits() >> (32 - n), g.clone()))
            .collect();
        CString {
            group: self.group.clone(),
            gens,
            caps: self.caps,
            parabolics: RefCell::new(parabolics),
        }
    }

    /// Whether some automorphism of the group maps one tuple onto the other.
    pub fn isomorphic(&self, other: &CString) -> Result<bool, CStringError> {
        if self.rank() != other.rank() {
            return Err(CStringError::RankMismatch(self.rank(), other.rank()));
        }
        if self.schlafli() != other.schlafli() {
            return Ok(false);
        }
        Ok(self
            .group
            .tuple_extends_to_automorphism(&self.gens, &other.gens)?)
    }

    /// How the string behaves in `G/N`.
    pub fn unravelled_wrt(&self, n: &FiniteGroup) -> Result<NormalOutcome, CStringError> {
        let q = Quotient::new(&self.group, n, self.caps.classes)?;
        Ok(self.image_in(&q, n.order())?.0)
    }

    /// Classifies the image of the string in a prepared quotient by a normal
    /// subgroup of order `normal_order`; the image string is returned when
    /// its generators are distinct involutions.
    pub fn image_in(&self, q: &Quotient, normal_order: u128) -> Result<(NormalOutcome, Option<CString>), CStringError> {
        let images: Vec<Perm> = self.gens.iter().map(|x| q.image(x)).collect();
        let collapses = !images.iter().all(Perm::is_involution)
            || (0..images.len()).any(|i| (i + 1..images.len()).any(|j| images[i] == images[j]));
        let (outcome, image) = if collapses {
            (Outcome::Collapses, None)
        } else {
            let image = CString::with_caps(Rc::new(q.group().clone()), images, self.caps)?;
            let outcome = match image.verify()?.failing_axiom() {
                Some(ax) => Outcome::NotCString(ax),
                None => Outcome::IsCString,
            };
            (outcome, Some(image))
        };
        let entry = NormalOutcome {
            normal_order,
            quotient_order: q.group().order(),
            outcome,
        };
        Ok((entry, image))
    }

    /// Checks every proper nontrivial normal subgroup in `normals`.
    pub fn is_unravelled(&self, normals: &[FiniteGroup]) -> Result<UnravelledVerdict, CStringError> {
        let mut entries = Vec::new();
        for n in normals {
            if n.order() == 1 || n.order() == self.group.order() {
                continue;
            }
            entries.push(self.unravelled_wrt(n)?);
        }
        Ok(UnravelledVerdict::from_entries(entries))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The images are not `n` distinct involutions.
    Collapses,
    /// The images are distinct involutions but break the given axiom.
    NotCString(Axiom),
    IsCString,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalOutcome {
    pub normal_order: u128,
    pub quotient_order: u128,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnravelledVerdict {
    pub entries: Vec<NormalOutcome>,
    pub unravelled: bool,
}

impl UnravelledVerdict {
    pub fn from_entries(entries: Vec<NormalOutcome>) -> Self {
        let unravelled = entries.iter().all(|e| e.outcome != Outcome::IsCString);
        Self {
            entries,
            unravelled,
        }
    }
}
