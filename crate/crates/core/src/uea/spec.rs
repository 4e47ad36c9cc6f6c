//! Lie algebras presented by structure constants.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finite-dimensional Lie algebra over Q(i), presented by its structure
/// constants: `[X_i, X_j] = sum_k c[i][j][k] X_k`.
///
/// The table is stored raw so that invalid presentations can be constructed
/// and diagnosed; see [`LieAlgebraSpec::validate`].
#[derive(Clone, PartialEq)]
pub struct LieAlgebraSpec {
    name: String,
    generator_names: Vec<String>,
    consts: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebraSpec {
    /// Raw constructor from a full structure-constant table.
    pub fn new(
        name: impl Into<String>,
        generator_names: Vec<String>,
        consts: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Arc<Self>> {
        let dim = generator_names.len();
        if dim == 0 {
            return Err(Error::InvalidLieAlgebra {
                details: "at least one generator is required".into(),
            });
        }
        if consts.len() != dim || consts.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) {
            return Err(Error::InvalidLieAlgebra {
                details: format!("structure constant table must be {dim}x{dim}x{dim}"),
            });
        }
        Ok(Arc::new(LieAlgebraSpec {
            name: name.into(),
            generator_names,
            consts,
        }))
    }

    /// Builds the table from bracket rules `[X_i, X_j] = sum terms`, filling
    /// the antisymmetric counterpart of each rule.
    pub fn from_brackets(
        name: impl Into<String>,
        generator_names: Vec<String>,
        rules: &[(usize, usize, Vec<(usize, Scalar)>)],
    ) -> Result<Arc<Self>> {
        let dim = generator_names.len();
        let zero = Scalar::zero();
        let mut consts = vec![vec![vec![zero; dim]; dim]; dim];
        for (i, j, terms) in rules {
            if *i >= dim || *j >= dim {
                return Err(Error::InvalidLieAlgebra {
                    details: format!("bracket rule references generator {} of {}", i.max(j), dim),
                });
            }
            for (k, c) in terms {
                if *k >= dim {
                    return Err(Error::InvalidLieAlgebra {
                        details: format!("bracket rule references generator {k} of {dim}"),
                    });
                }
                consts[*i][*j][*k] = &consts[*i][*j][*k] + c;
                consts[*j][*i][*k] = &consts[*j][*i][*k] - c;
            }
        }
        Self::new(name, generator_names, consts)
    }

    /// The abelian Lie algebra of the given dimension.
    pub fn abelian(name: impl Into<String>, generator_names: Vec<String>) -> Arc<Self> {
        let dim = generator_names.len();
        let zero = Scalar::zero();
        Self::new(name, generator_names, vec![vec![vec![zero; dim]; dim]; dim])
            .expect("abelian table is well-formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_name(&self, i: usize) -> &str {
        &self.generator_names[i]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    pub fn structure_const(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.consts[i][j][k]
    }

    /// Nonzero terms of `[X_i, X_j]` as `(k, coefficient)` pairs.
    pub fn bracket_terms(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.consts[i][j]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    /// Checks antisymmetry and the Jacobi identity exactly; the returned
    /// report lists every violated instance.
    pub fn validate(&self) -> LieValidation {
        let dim = self.dim();
        let mut antisymmetry = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    let sum = &self.consts[i][j][k] + &self.consts[j][i][k];
                    if !sum.is_zero() {
                        antisymmetry.push(AntisymmetryViolation {
                            i,
                            j,
                            k,
                            residual: sum,
                        });
                    }
                }
            }
        }
        let mut jacobi = Vec::new();
        // Jacobi violations are only meaningful on an antisymmetric table.
        if antisymmetry.is_empty() {
            for i in 0..dim {
                for j in (i + 1)..dim {
                    for k in (j + 1)..dim {
                        for l in 0..dim {
                            // sum over cyclic (i,j,k): c[j][k][m] c[i][m][l] + ...
                            let mut acc = Scalar::zero();
                            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                                for m in 0..dim {
                                    acc += &(&self.consts[b][c][m] * &self.consts[a][m][l]);
                                }
                            }
                            if !acc.is_zero() {
                                jacobi.push(JacobiViolation {
                                    i,
                                    j,
                                    k,
                                    component: l,
                                    residual: acc,
                                });
                            }
                        }
                    }
                }
            }
        }
        LieValidation {
            antisymmetry,
            jacobi,
        }
    }
}

impl fmt::Debug for LieAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebraSpec({})", self.name)
    }
}

/// `true` when both elements live over the same spec (by identity or value).
pub fn same_spec(a: &Arc<LieAlgebraSpec>, b: &Arc<LieAlgebraSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_same_spec(a: &Arc<LieAlgebraSpec>, b: &Arc<LieAlgebraSpec>) -> Result<()> {
    if same_spec(a, b) {
        Ok(())
    } else {
        Err(Error::SpecMismatch {
            left: a.name().to_string(),
            right: b.name().to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AntisymmetryViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// c[i][j][k] + c[j][i][k], which must vanish.
    pub residual: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub component: usize,
    pub residual: Scalar,
}

/// Validation report for a structure-constant table; empty iff valid.
#[derive(Clone, Debug, PartialEq)]
pub struct LieValidation {
    pub antisymmetry: Vec<AntisymmetryViolation>,
    pub jacobi: Vec<JacobiViolation>,
}

impl LieValidation {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}
