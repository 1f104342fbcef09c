//! Closed-form Loewy lengths of tensor products.
//!
//! Any string or band module reduces to modules with simple top and simple
//! socle ("atoms"): the uniserial modules `M(A_t)`, `M(B_t)` and the two-leg
//! bands `M(A_l1 B_l2^-1, rho)`. The length of a tensor product is the
//! maximum over atom pairs, and each atom pair has a closed form in terms of
//! the binary expansions of the lengths involved.

use std::fmt;

use crate::binlucas::{hash, perp, perp_signed};
use crate::error::{Error, Result};
use crate::gf2e::{Field, FieldElem};
use crate::modrep::{self, Representation};
use crate::words::{self, Kind, Word};

/// An indecomposable module, as accepted by the engines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModuleSpec {
    UniserialA(u64),
    UniserialB(u64),
    String(Word),
    Band {
        word: Word,
        rho: FieldElem,
        n: usize,
    },
}

/// Which engine produced a [`LoewyReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Formula,
    Oracle,
    Both,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Formula => "formula",
            Engine::Oracle => "oracle",
            Engine::Both => "both",
        })
    }
}

/// The branch of the band-with-band formula that produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BandBandCase {
    /// Unequal legs on one side; reduces to band-with-string.
    UnequalLegs,
    /// None of `l ⊥ m`, `l ⊥ m-1`, `l-1 ⊥ m`.
    NoneDisjoint,
    /// `l ⊥ m` and `l-1 ⊥ m`.
    RightParameter,
    /// `l ⊥ m` and `l ⊥ m-1`.
    LeftParameter,
    /// `l-1 ⊥ m` and `l ⊥ m-1`.
    BothParameters,
}

impl BandBandCase {
    pub const ALL: [BandBandCase; 5] = [
        BandBandCase::UnequalLegs,
        BandBandCase::NoneDisjoint,
        BandBandCase::RightParameter,
        BandBandCase::LeftParameter,
        BandBandCase::BothParameters,
    ];

    /// Short label `a` .. `e`.
    pub fn label(self) -> char {
        match self {
            BandBandCase::UnequalLegs => 'a',
            BandBandCase::NoneDisjoint => 'b',
            BandBandCase::RightParameter => 'c',
            BandBandCase::LeftParameter => 'd',
            BandBandCase::BothParameters => 'e',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoewyReport {
    pub length: u64,
    pub engine: Engine,
    pub projective_summand: bool,
    /// Human-readable reduction steps.
    pub trace: Vec<String>,
    /// Band-with-band branches taken while evaluating atom pairs.
    pub band_cases: Vec<BandBandCase>,
}

/// A module with simple top and simple socle. Bands are kept in the form
/// `A_l1 B_l2^-1` with the parameter adjusted accordingly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Uniserial(Kind, u64),
    Band { l1: u64, l2: u64, rho: FieldElem },
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Uniserial(k, l) => write!(f, "{k}{l}"),
            Atom::Band { l1, l2, rho } => write!(f, "A{l1}B{l2}^-1[{rho}]"),
        }
    }
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 || !q.is_power_of_two() {
        return Err(Error::domain(format!(
            "q must be a power of 2 with q >= 2, got {q}"
        )));
    }
    Ok(())
}

impl ModuleSpec {
    /// The regular module for `q`.
    pub fn regular(q: u64) -> Result<Self> {
        Ok(ModuleSpec::Band {
            word: modrep::regular_word(q)?,
            rho: FieldElem::ONE,
            n: 1,
        })
    }

    /// Parses `A:<l>`, `B:<l>`, `S:<word>`, `N:<l1>,<l2>,<rho>[,<n>]`,
    /// `W:<word>,<rho>[,<n>]` or `P` (the regular module for `q`).
    pub fn parse(text: &str, q: u64) -> Result<Self> {
        let text = text.trim();
        if text == "P" {
            return Self::regular(q);
        }
        let (tag, body) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(0, format!("expected <tag>:<args> or P, got {text:?}")))?;
        let offset = tag.len() + 1;
        let fields: Vec<&str> = body.split(',').map(str::trim).collect();
        let nat = |i: usize| -> Result<u64> {
            let pos = offset + fields[..i].iter().map(|s| s.len() + 1).sum::<usize>();
            fields
                .get(i)
                .ok_or_else(|| Error::parse(pos, "missing argument"))?
                .parse::<u64>()
                .map_err(|e| Error::parse(pos, format!("{:?}: {e}", fields[i])))
        };
        let arity = |lo: usize, hi: usize| -> Result<()> {
            if fields.len() < lo || fields.len() > hi {
                return Err(Error::parse(
                    offset,
                    format!(
                        "{tag}: expected {lo}..={hi} arguments, got {}",
                        fields.len()
                    ),
                ));
            }
            Ok(())
        };
        let elem = |v: u64, pos: usize| -> Result<FieldElem> {
            u8::try_from(v)
                .map(FieldElem)
                .map_err(|_| Error::parse(pos, format!("field element {v} out of range")))
        };
        match tag {
            "A" | "B" => {
                arity(1, 1)?;
                let l = nat(0)?;
                Ok(if tag == "A" {
                    ModuleSpec::UniserialA(l)
                } else {
                    ModuleSpec::UniserialB(l)
                })
            }
            "S" => {
                arity(1, 1)?;
                let word = Word::parse(fields[0]).map_err(|e| shift(e, offset))?;
                Ok(ModuleSpec::String(word))
            }
            "N" => {
                arity(3, 4)?;
                let (l1, l2) = (nat(0)?, nat(1)?);
                let rho = elem(nat(2)?, offset)?;
                let n = if fields.len() == 4 { nat(3)? } else { 1 };
                let word = words::two_leg_band_word(to_usize(l1)?, to_usize(l2)?)?;
                Ok(ModuleSpec::Band {
                    word,
                    rho,
                    n: to_usize(n)?,
                })
            }
            "W" => {
                arity(2, 3)?;
                let word = Word::parse(fields[0]).map_err(|e| shift(e, offset))?;
                let rho = elem(nat(1)?, offset)?;
                let n = if fields.len() == 3 { nat(2)? } else { 1 };
                Ok(ModuleSpec::Band {
                    word,
                    rho,
                    n: to_usize(n)?,
                })
            }
            _ => Err(Error::parse(0, format!("unknown module tag {tag:?}"))),
        }
    }

    /// Image under the automorphism exchanging `X` and `Y`.
    pub fn swapped(&self) -> Self {
        match self {
            ModuleSpec::UniserialA(l) => ModuleSpec::UniserialB(*l),
            ModuleSpec::UniserialB(l) => ModuleSpec::UniserialA(*l),
            ModuleSpec::String(w) => ModuleSpec::String(w.swapped()),
            ModuleSpec::Band { word, rho, n } => ModuleSpec::Band {
                word: word.swapped(),
                rho: *rho,
                n: *n,
            },
        }
    }

    /// `true` for the band `(XY)^q (X^-1 Y^-1)^q` up to rotation and
    /// inversion, with parameter 1 and block size 1.
    pub fn is_regular(&self, q: u64) -> bool {
        let ModuleSpec::Band { word, rho, n } = self else {
            return false;
        };
        if *n != 1 || *rho != FieldElem::ONE || word.len() as u64 != 4 * q {
            return false;
        }
        match words::band_canonical(word) {
            Ok(shape) => {
                shape.components.iter().all(|c| c.length as u64 == 2 * q)
                    && shape.components.len() == 2
            }
            Err(_) => false,
        }
    }

    /// Checks that the spec describes a module of the group algebra for `q`
    /// over `field`: every directed component is shorter than `2q` (the
    /// regular module excepted), band data is well formed.
    pub fn validate(&self, q: u64, field: &Field) -> Result<()> {
        check_q(q)?;
        let invalid = |reason: String| Error::InvalidModule { q, reason };
        let check_len = |what: &str, len: u64| -> Result<()> {
            if len >= 2 * q {
                return Err(invalid(format!(
                    "{what} has length {len}, must be at most {}",
                    2 * q - 1
                )));
            }
            Ok(())
        };
        match self {
            ModuleSpec::UniserialA(l) => check_len(&format!("A{l}"), *l),
            ModuleSpec::UniserialB(l) => check_len(&format!("B{l}"), *l),
            ModuleSpec::String(w) => words::directed_components(w)
                .iter()
                .try_for_each(|c| check_len(&format!("component {c} of {w}"), c.length as u64)),
            ModuleSpec::Band { word, rho, n } => {
                if !words::in_w_prime(word) {
                    return Err(invalid(format!("{word} is not a band word")));
                }
                if rho.is_zero() || !field.contains(*rho) {
                    return Err(invalid(format!(
                        "band parameter {rho} is not a nonzero element of {field}"
                    )));
                }
                if *n == 0 {
                    return Err(invalid("band block size must be at least 1".into()));
                }
                if self.is_regular(q) {
                    return Ok(());
                }
                words::band_canonical(word)?
                    .components
                    .iter()
                    .try_for_each(|c| {
                        check_len(&format!("component {c} of {word}"), c.length as u64)
                    })
            }
        }
    }

    /// The explicit representation used by the oracle.
    pub fn representation(&self, field: &Field) -> Result<Representation> {
        match self {
            ModuleSpec::UniserialA(l) => {
                Ok(modrep::string_rep(&words::a_word(to_usize(*l)?), field))
            }
            ModuleSpec::UniserialB(l) => {
                Ok(modrep::string_rep(&words::b_word(to_usize(*l)?), field))
            }
            ModuleSpec::String(w) => Ok(modrep::string_rep(w, field)),
            ModuleSpec::Band { word, rho, n } => modrep::band_rep(word, *rho, *n, field),
        }
    }

    /// Dimension of the module.
    pub fn dim(&self) -> usize {
        match self {
            ModuleSpec::UniserialA(l) | ModuleSpec::UniserialB(l) => *l as usize + 1,
            ModuleSpec::String(w) => w.len() + 1,
            ModuleSpec::Band { word, n, .. } => word.len() * n,
        }
    }

    /// Splits the module into the atoms whose pairwise tensor products
    /// determine the Loewy length. `field` is needed to invert band parameters.
    pub fn atoms(&self, field: &Field) -> Result<Vec<Atom>> {
        match self {
            ModuleSpec::UniserialA(l) => Ok(vec![Atom::Uniserial(Kind::A, *l)]),
            ModuleSpec::UniserialB(l) => Ok(vec![Atom::Uniserial(Kind::B, *l)]),
            ModuleSpec::String(w) => {
                if w.is_empty() {
                    return Ok(vec![Atom::Uniserial(Kind::A, 0)]);
                }
                Ok(words::directed_components(w)
                    .iter()
                    .map(|c| Atom::Uniserial(c.kind, c.length as u64))
                    .collect())
            }
            ModuleSpec::Band { word, rho, n } => {
                let shape = words::band_canonical(word)?;
                match shape.two_component_scalar {
                    Some((l1, l2, kind)) if *n == 1 => {
                        // Inversion of the word inverts the parameter; a B-first
                        // band is inverted once more to bring it to A-first form.
                        let mut rho = *rho;
                        if shape.from_inverse {
                            rho = field.inv(rho)?;
                        }
                        let (l1, l2) = match kind {
                            Kind::A => (l1, l2),
                            Kind::B => {
                                rho = field.inv(rho)?;
                                (l2, l1)
                            }
                        };
                        Ok(vec![Atom::Band {
                            l1: l1 as u64,
                            l2: l2 as u64,
                            rho,
                        }])
                    }
                    _ => Ok(shape
                        .components
                        .iter()
                        .map(|c| Atom::Uniserial(c.kind, c.length as u64))
                        .collect()),
                }
            }
        }
    }
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        other => other,
    }
}

fn to_usize(v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::domain(format!("{v} does not fit in usize")))
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::UniserialA(l) => write!(f, "A:{l}"),
            ModuleSpec::UniserialB(l) => write!(f, "B:{l}"),
            ModuleSpec::String(w) => write!(f, "S:{w}"),
            ModuleSpec::Band { word, rho, n } => write!(f, "W:{word},{},{n}", rho.0),
        }
    }
}

/// `ℓ(M(K_l) ⊗ M(K'_m))` for uniserial modules of kinds `kl`, `kr`.
pub fn loewy_uniserial(kl: Kind, l: u64, kr: Kind, m: u64) -> u64 {
    let h = hash(l, m);
    if kl != kr {
        if perp(l, m) {
            1 + l + m
        } else {
            2 + h
        }
    } else {
        let s = crate::binlucas::disjoint_from(l, m);
        // bits 0 .. s-2 of both l and m
        let low = if s >= 2 { (1u64 << (s - 1)) - 1 } else { 0 };
        if (l | m) & low == 0 {
            1 + h
        } else {
            2 + h
        }
    }
}

/// `ℓ(M(A_l1 B_l2^-1, rho) ⊗ M(K_m))`.
pub fn loewy_band_uniserial(l1: u64, l2: u64, rho: FieldElem, kr: Kind, m: u64) -> Result<u64> {
    if l1 == 0 || l2 == 0 {
        return Err(Error::domain("band legs must have positive length"));
    }
    // The special branch only fires for rho = 1 and equal legs, a condition
    // preserved by the X <-> Y swap, so it reads the same for both kinds.
    let m_minus_1 = m as i64 - 1;
    if rho == FieldElem::ONE && l1 == l2 && perp(l1, m) && perp_signed(l1 as i64, m_minus_1) {
        return Ok(2 + hash(l1 - 1, m));
    }
    Ok(loewy_uniserial(Kind::A, l1, kr, m).max(loewy_uniserial(Kind::B, l2, kr, m)))
}

/// `ℓ(M(A_l1 B_l2^-1, rho) ⊗ M(A_m1 B_m2^-1, sigma))`.
pub fn loewy_band_band(
    l1: u64,
    l2: u64,
    rho: FieldElem,
    m1: u64,
    m2: u64,
    sigma: FieldElem,
) -> Result<u64> {
    loewy_band_band_case(l1, l2, rho, m1, m2, sigma).map(|(len, _)| len)
}

/// As [`loewy_band_band`], also reporting the branch taken.
pub fn loewy_band_band_case(
    l1: u64,
    l2: u64,
    rho: FieldElem,
    m1: u64,
    m2: u64,
    sigma: FieldElem,
) -> Result<(u64, BandBandCase)> {
    if l1 == 0 || l2 == 0 || m1 == 0 || m2 == 0 {
        return Err(Error::domain("band legs must have positive length"));
    }
    if l1 != l2 {
        let len = loewy_band_uniserial(m1, m2, sigma, Kind::A, l1)?.max(loewy_band_uniserial(
            m1,
            m2,
            sigma,
            Kind::B,
            l2,
        )?);
        return Ok((len, BandBandCase::UnequalLegs));
    }
    if m1 != m2 {
        let len = loewy_band_uniserial(l1, l2, rho, Kind::A, m1)?.max(loewy_band_uniserial(
            l1,
            l2,
            rho,
            Kind::B,
            m2,
        )?);
        return Ok((len, BandBandCase::UnequalLegs));
    }
    let (l, m) = (l1, m1);
    let one = FieldElem::ONE;
    let base = 2 + hash(l - 1, m - 1);
    let p_lm = perp(l, m);
    let p_l1m = perp(l - 1, m);
    let p_lm1 = perp(l, m - 1);
    Ok(match (p_lm, p_l1m, p_lm1) {
        (false, false, false) => (base, BandBandCase::NoneDisjoint),
        (true, true, _) => (
            if sigma == one { base } else { l + m + 1 },
            BandBandCase::RightParameter,
        ),
        (true, _, true) => (
            if rho == one { base } else { l + m + 1 },
            BandBandCase::LeftParameter,
        ),
        (_, true, true) => {
            let len = if rho == one && sigma == one {
                base
            } else if rho == sigma {
                l + m
            } else {
                l + m + 1
            };
            (len, BandBandCase::BothParameters)
        }
        _ => unreachable!("a single disjointness relation among l, l-1, m, m-1 never holds alone"),
    })
}

/// `ℓ` of the tensor product of two atoms, with the band branch if any.
pub fn loewy_atoms(a: &Atom, b: &Atom) -> Result<(u64, Option<BandBandCase>)> {
    match (*a, *b) {
        (Atom::Uniserial(kl, l), Atom::Uniserial(kr, m)) => {
            Ok((loewy_uniserial(kl, l, kr, m), None))
        }
        (Atom::Band { l1, l2, rho }, Atom::Uniserial(k, m))
        | (Atom::Uniserial(k, m), Atom::Band { l1, l2, rho }) => {
            Ok((loewy_band_uniserial(l1, l2, rho, k, m)?, None))
        }
        (
            Atom::Band { l1, l2, rho },
            Atom::Band {
                l1: m1,
                l2: m2,
                rho: sigma,
            },
        ) => {
            let (len, case) = loewy_band_band_case(l1, l2, rho, m1, m2, sigma)?;
            Ok((len, Some(case)))
        }
    }
}

/// Whether the tensor product of two atoms has a projective summand, read
/// from the atoms' lengths directly (all legs below `2q`).
pub fn projective_atoms(a: &Atom, b: &Atom, q: u64) -> bool {
    let two_q = 2 * q;
    match (*a, *b) {
        (Atom::Uniserial(kl, l), Atom::Uniserial(kr, m)) => {
            if kl != kr {
                l + m >= two_q
            } else {
                l + m > two_q
            }
        }
        (Atom::Band { l1, l2, .. }, Atom::Uniserial(k, m))
        | (Atom::Uniserial(k, m), Atom::Band { l1, l2, .. }) => {
            // A B_m partner exchanges the roles of the legs.
            let (a_leg, b_leg) = match k {
                Kind::A => (l1, l2),
                Kind::B => (l2, l1),
            };
            (a_leg + m - 1).max(b_leg + m) >= two_q
        }
        (
            Atom::Band { l1, l2, rho },
            Atom::Band {
                l1: m1,
                l2: m2,
                rho: sigma,
            },
        ) => {
            if l1 != l2 || m1 != m2 {
                [l1 + m1 - 1, l1 + m2, l2 + m1, l2 + m2 - 1]
                    .into_iter()
                    .max()
                    .is_some_and(|v| v >= two_q)
            } else {
                let (l, m) = (l1, m1);
                if !perp(l, m - 1) {
                    l + m >= two_q
                } else {
                    rho != sigma && l + m == two_q
                }
            }
        }
    }
}

fn prepare(a: &ModuleSpec, b: &ModuleSpec, q: u64, field: &Field) -> Result<()> {
    check_q(q)?;
    a.validate(q, field)?;
    b.validate(q, field)
}

/// The Loewy length of `a ⊗ b` over the group algebra for `q`, by reduction
/// to atoms and the closed forms.
pub fn loewy_general(a: &ModuleSpec, b: &ModuleSpec, q: u64, field: &Field) -> Result<LoewyReport> {
    prepare(a, b, q, field)?;
    let mut trace = Vec::new();
    if a.is_regular(q) || b.is_regular(q) {
        trace.push(format!("projective factor: length 2q+1 = {}", 2 * q + 1));
        return Ok(LoewyReport {
            length: 2 * q + 1,
            engine: Engine::Formula,
            projective_summand: true,
            trace,
            band_cases: Vec::new(),
        });
    }
    let left = a.atoms(field)?;
    let right = b.atoms(field)?;
    trace.push(format!("{a} -> {}", join(&left)));
    trace.push(format!("{b} -> {}", join(&right)));
    let mut length = 0;
    let mut projective = false;
    let mut band_cases = Vec::new();
    for x in &left {
        for y in &right {
            let (len, case) = loewy_atoms(x, y)?;
            let proj = projective_atoms(x, y, q);
            match case {
                Some(c) => trace.push(format!("{x} (x) {y}: {len} (band case {})", c.label())),
                None => trace.push(format!("{x} (x) {y}: {len}")),
            }
            band_cases.extend(case);
            length = length.max(len);
            projective |= proj;
        }
    }
    trace.push(format!("max = {length}"));
    Ok(LoewyReport {
        length,
        engine: Engine::Formula,
        projective_summand: projective,
        trace,
        band_cases,
    })
}

/// Whether `a ⊗ b` has a projective direct summand, decided from the
/// leg lengths alone (independently of [`loewy_general`]).
pub fn projective_summand(a: &ModuleSpec, b: &ModuleSpec, q: u64, field: &Field) -> Result<bool> {
    prepare(a, b, q, field)?;
    if a.is_regular(q) || b.is_regular(q) {
        return Ok(true);
    }
    let left = a.atoms(field)?;
    let right = b.atoms(field)?;
    Ok(left
        .iter()
        .any(|x| right.iter().any(|y| projective_atoms(x, y, q))))
}

/// The Loewy length of `a ⊗ b` computed from explicit matrices.
pub fn loewy_oracle(a: &ModuleSpec, b: &ModuleSpec, q: u64, field: &Field) -> Result<u64> {
    prepare(a, b, q, field)?;
    let r = a.representation(field)?;
    let s = b.representation(field)?;
    let t = modrep::tensor_rep(&r, &s)?;
    Ok(modrep::loewy_length(&t) as u64)
}

fn join(atoms: &[Atom]) -> String {
    atoms
        .iter()
        .map(Atom::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}
