//! Rack 2-cocycles with values in a field: validation, order, extension
//! to monomials, and the catalog cocycles (constant q, chi4, chi6, chi10).

use std::fmt;

use crate::error::CoreError;
use crate::field::{quantum_order, Field, FieldDescriptor, Order, Scalar};
use crate::rack::Rack;

/// Why a matrix fails to be a 2-cocycle (labels 1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleViolation {
    ZeroEntry { t: usize, s: usize },
    Identity { t: usize, s: usize, r: usize },
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleViolation::ZeroEntry { t, s } => write!(f, "entry ({t},{s}) is zero"),
            CocycleViolation::Identity { t, s, r } => {
                write!(f, "cocycle identity fails at triple ({t},{s},{r})")
            }
        }
    }
}

/// A rack 2-cocycle: a size x size matrix of nonzero scalars satisfying
/// `chi(t, s>r) chi(s, r) = chi(t>s, t>r) chi(t, r)`.
#[derive(Debug, Clone)]
pub struct Cocycle {
    rack: Rack,
    field: Field,
    /// `matrix[t][s] = chi(t, s)`, 0-based.
    matrix: Vec<Vec<Scalar>>,
    name: String,
}

impl Cocycle {
    pub fn new(
        rack: Rack,
        field: Field,
        matrix: Vec<Vec<Scalar>>,
        name: impl Into<String>,
    ) -> Result<Cocycle, CoreError> {
        let c = Cocycle {
            rack,
            field,
            matrix,
            name: name.into(),
        };
        c.validate().map_err(|v| CoreError::InvalidCocycle(v.to_string()))?;
        Ok(c)
    }

    /// Constant cocycle with a single value `q`.
    pub fn constant(rack: Rack, field: Field, q: Scalar) -> Result<Cocycle, CoreError> {
        let n = rack.size();
        let name = format!("const({})", field.format_scalar(&q));
        let matrix = vec![vec![q; n]; n];
        Cocycle::new(rack, field, matrix, name)
    }

    pub fn rack(&self) -> &Rack {
        &self.rack
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn entry(&self, t: u8, s: u8) -> &Scalar {
        &self.matrix[t as usize][s as usize]
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    /// Check the 2-cocycle identity over all triples.
    pub fn validate(&self) -> Result<(), CocycleViolation> {
        let n = self.rack.size();
        if self.matrix.len() != n || self.matrix.iter().any(|row| row.len() != n) {
            return Err(CocycleViolation::Identity { t: 0, s: 0, r: 0 });
        }
        for (t, row) in self.matrix.iter().enumerate() {
            for (s, v) in row.iter().enumerate() {
                if self.field.is_zero(v) {
                    return Err(CocycleViolation::ZeroEntry { t: t + 1, s: s + 1 });
                }
            }
        }
        let f = &self.field;
        for t in 0..n as u8 {
            for s in 0..n as u8 {
                for r in 0..n as u8 {
                    let lhs = f.mul(self.entry(t, self.rack.act(s, r)), self.entry(s, r));
                    let rhs = f.mul(
                        self.entry(self.rack.act(t, s), self.rack.act(t, r)),
                        self.entry(t, r),
                    );
                    if lhs != rhs {
                        return Err(CocycleViolation::Identity {
                            t: t as usize + 1,
                            s: s as usize + 1,
                            r: r as usize + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The common diagonal value `q` (requires an indecomposable rack).
    pub fn diagonal(&self) -> Result<&Scalar, CoreError> {
        let q = self.entry(0, 0);
        for t in 1..self.rack.size() as u8 {
            if self.entry(t, t) != q {
                return Err(CoreError::InvalidCocycle(
                    "diagonal is not constant".into(),
                ));
            }
        }
        Ok(q)
    }

    /// The cocycle order `m`: minimal `m >= 2` with `(m)_q = 0` for the
    /// common diagonal value `q`.
    pub fn order(&self) -> Result<Order, CoreError> {
        Ok(quantum_order(&self.field, self.diagonal()?))
    }

    /// Multiplicative order of the diagonal value (reported alongside the
    /// quantum order, since the two differ in positive characteristic).
    pub fn diagonal_multiplicative_order(&self) -> Result<Order, CoreError> {
        Ok(self.field.multiplicative_order(self.diagonal()?))
    }

    /// Apply the extended action of the word `u` to `e_s`:
    /// `g_u(e_s) = lambda * e_{u > s}` with one cocycle factor per letter,
    /// folded right to left. Returns `(lambda, u > s)`.
    pub fn extended(&self, word: &[u8], s: u8) -> (Scalar, u8) {
        let mut lambda = self.field.one();
        let mut target = s;
        for &letter in word.iter().rev() {
            lambda = self.field.mul(&lambda, self.entry(letter, target));
            target = self.rack.act(letter, target);
        }
        (lambda, target)
    }

    /// The induced cocycle on a subrack (0-based labels, relabeled along
    /// sorted label order, matching [`Rack::restricted`]).
    pub fn restricted(&self, subset: &[u8]) -> Result<Cocycle, CoreError> {
        let sub = self.rack.restricted(subset)?;
        let mut labels = subset.to_vec();
        labels.sort_unstable();
        let matrix: Vec<Vec<Scalar>> = labels
            .iter()
            .map(|&t| labels.iter().map(|&s| self.entry(t, s).clone()).collect())
            .collect();
        let labels_1b: Vec<usize> = labels.iter().map(|&l| l as usize + 1).collect();
        Cocycle::new(
            sub,
            self.field.clone(),
            matrix,
            format!("{}|{:?}", self.name, labels_1b),
        )
    }
}

/// An element of multiplicative order `n`, when the field has one.
pub fn root_of_unity(field: &Field, n: u32) -> Option<Scalar> {
    match field.descriptor() {
        FieldDescriptor::Rationals => match n {
            1 => Some(field.one()),
            2 => Some(field.from_i64(-1)),
            _ => None,
        },
        FieldDescriptor::Cyclotomic(big_n) => {
            if n == 1 {
                Some(field.one())
            } else if n == 2 {
                Some(field.from_i64(-1))
            } else if big_n % n == 0 {
                let z = field.generator()?;
                Some(field.pow(&z, (big_n / n) as u64))
            } else {
                None
            }
        }
        FieldDescriptor::Finite { p, k } => {
            let q = p.pow(*k) - 1;
            if n == 1 {
                Some(field.one())
            } else if q % n as u64 == 0 {
                let g = field.generator()?;
                Some(field.pow(&g, q / n as u64))
            } else {
                None
            }
        }
    }
}

const CHI4_SIGNS: [[i8; 4]; 4] = [
    [1, -1, -1, 1],
    [-1, 1, -1, 1],
    [-1, -1, 1, 1],
    [1, 1, 1, 1],
];

const CHI6_SIGNS: [[i8; 6]; 6] = [
    [-1, 1, -1, 1, -1, 1],
    [1, -1, 1, -1, -1, 1],
    [1, 1, -1, 1, 1, 1],
    [1, 1, 1, -1, 1, 1],
    [1, 1, 1, 1, -1, 1],
    [-1, -1, -1, -1, 1, -1],
];

const CHI10_SIGNS: [[i8; 10]; 10] = [
    [-1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [-1, -1, 1, 1, 1, 1, -1, 1, 1, 1],
    [-1, -1, -1, 1, -1, 1, 1, -1, 1, 1],
    [-1, -1, -1, -1, 1, -1, 1, 1, -1, -1],
    [1, 1, 1, 1, -1, 1, -1, -1, 1, 1],
    [1, 1, 1, 1, -1, -1, -1, 1, -1, -1],
    [1, 1, 1, 1, 1, 1, -1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, -1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1, -1, 1],
    [1, 1, 1, 1, 1, 1, 1, -1, -1, -1],
];

/// Catalog cocycles by name: `const(<scalar>)`, `chi4`, `chi6`, `chi10`.
/// `chi4` needs a field containing a primitive third root of unity.
pub fn catalog_cocycle(name: &str, rack: Rack, field: Field) -> Result<Cocycle, CoreError> {
    if let Some(inner) = name.strip_prefix("const(").and_then(|r| r.strip_suffix(')')) {
        let q = field.parse_scalar(inner)?;
        if field.is_zero(&q) {
            return Err(CoreError::InvalidCocycle("constant value is zero".into()));
        }
        return Cocycle::constant(rack, field, q);
    }
    let (signs, size): (Vec<Vec<i8>>, usize) = match name {
        "chi4" => (CHI4_SIGNS.iter().map(|r| r.to_vec()).collect(), 4),
        "chi6" => (CHI6_SIGNS.iter().map(|r| r.to_vec()).collect(), 6),
        "chi10" => (CHI10_SIGNS.iter().map(|r| r.to_vec()).collect(), 10),
        _ => return Err(CoreError::UnknownName(name.to_string())),
    };
    if rack.size() != size {
        return Err(CoreError::InvalidCocycle(format!(
            "{name} is a {size}x{size} cocycle but the rack has size {}",
            rack.size()
        )));
    }
    let unit = if name == "chi4" {
        root_of_unity(&field, 3).ok_or_else(|| {
            CoreError::InvalidCocycle(format!(
                "{} has no primitive third root of unity for chi4",
                field.descriptor()
            ))
        })?
    } else {
        field.one()
    };
    let neg_unit = field.neg(&unit);
    let matrix: Vec<Vec<Scalar>> = signs
        .iter()
        .map(|row| {
            row.iter()
                .map(|&sg| if sg >= 0 { unit.clone() } else { neg_unit.clone() })
                .collect()
        })
        .collect();
    Cocycle::new(rack, field, matrix, name)
}
