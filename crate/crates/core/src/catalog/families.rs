//! Named families of low-dimensional solvable Lie algebras.

use num_traits::{Signed, Zero};

use super::salamon::{parse_salamon, Bindings};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::scalar::{one, Scalar};

pub struct Family {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub dim: usize,
    pub differentials: &'static str,
    pub params: &'static [&'static str],
    /// Human-readable parameter constraint.
    pub constraint: &'static str,
    check: fn(&Bindings) -> bool,
}

fn p<'a>(b: &'a Bindings, name: &str) -> &'a Scalar {
    &b[name]
}

pub const FAMILIES: &[Family] = &[
    Family {
        name: "aff_R",
        aliases: &["aff", "affR"],
        dim: 2,
        differentials: "(0,21)",
        params: &[],
        constraint: "",
        check: |_| true,
    },
    Family {
        name: "h_3",
        aliases: &["h3"],
        dim: 3,
        differentials: "(0,0,21)",
        params: &[],
        constraint: "",
        check: |_| true,
    },
    Family {
        name: "r'_{3,lambda}",
        aliases: &["r'3", "r'_3"],
        dim: 3,
        differentials: "(0,lambda.21+31,-21+lambda.31)",
        params: &["lambda"],
        constraint: "lambda >= 0",
        check: |b| !p(b, "lambda").is_negative(),
    },
    Family {
        name: "r_{4,mu,lambda}",
        aliases: &["r4", "r_4"],
        dim: 4,
        differentials: "(0,21,mu.31,lambda.41)",
        params: &["mu", "lambda"],
        constraint: "0 < |lambda| <= |mu| <= 1",
        check: |b| {
            let (mu, la) = (p(b, "mu").abs(), p(b, "lambda").abs());
            !la.is_zero() && la <= mu && mu <= one()
        },
    },
    Family {
        name: "r'_{4,mu,lambda}",
        aliases: &["r'4", "r'_4"],
        dim: 4,
        differentials: "(0,mu.21,lambda.31+41,-31+lambda.41)",
        params: &["mu", "lambda"],
        constraint: "mu > 0",
        check: |b| p(b, "mu").is_positive(),
    },
    Family {
        name: "g_{5,17}^{alpha,beta,gamma}",
        aliases: &["g5_17", "g_5_17"],
        dim: 5,
        differentials: "(0,alpha.21+31,-21+alpha.31,beta.41+gamma.51,-gamma.41+alpha.51)",
        params: &["alpha", "beta", "gamma"],
        constraint: "alpha >= 0, gamma != 0",
        check: |b| !p(b, "alpha").is_negative() && !p(b, "gamma").is_zero(),
    },
    Family {
        name: "g_{6,11}^{alpha,beta,gamma,delta}",
        aliases: &["g6_11", "g_6_11"],
        dim: 6,
        differentials: "(0,alpha.21,beta.31+41,-31+beta.41,gamma.51+delta.61,-delta.51+gamma.61)",
        params: &["alpha", "beta", "gamma", "delta"],
        constraint: "alpha*delta != 0",
        check: |b| !(p(b, "alpha") * p(b, "delta")).is_zero(),
    },
    Family {
        name: "N_{6,1}^{alpha,beta,gamma,delta}",
        aliases: &["N6_1", "N_6_1"],
        dim: 6,
        differentials: "(alpha.15+beta.16,gamma.25+delta.26,35,46,0,0)",
        params: &["alpha", "beta", "gamma", "delta"],
        constraint: "alpha*beta != 0, (gamma,delta) != (0,0)",
        check: |b| {
            !(p(b, "alpha") * p(b, "beta")).is_zero() && !(p(b, "gamma").is_zero() && p(b, "delta").is_zero())
        },
    },
    Family {
        name: "N_{6,14}^{alpha,beta,gamma}",
        aliases: &["N6_14", "N_6_14"],
        dim: 6,
        differentials: "(alpha.15+beta.16,26,gamma.35-45,gamma.45+35,0,0)",
        params: &["alpha", "beta", "gamma"],
        constraint: "alpha*beta != 0",
        check: |b| !(p(b, "alpha") * p(b, "beta")).is_zero(),
    },
];

/// Greek letters to the ASCII names used in family names and bindings.
pub fn transliterate(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            'α' => out.push_str("alpha"),
            'β' => out.push_str("beta"),
            'γ' => out.push_str("gamma"),
            'δ' => out.push_str("delta"),
            'λ' => out.push_str("lambda"),
            'μ' => out.push_str("mu"),
            '′' => out.push('\''),
            c if c.is_whitespace() => {}
            c => out.push(c),
        }
    }
    out
}

pub fn family(name: &str) -> Result<&'static Family> {
    let key = transliterate(name);
    FAMILIES
        .iter()
        .find(|f| f.name == key || f.name.split('^').next() == Some(key.as_str()) || f.aliases.contains(&key.as_str()))
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// A member of a named family; parameter names may be given in Greek or
/// ASCII.
pub fn named_algebra(name: &str, params: &Bindings) -> Result<LieAlgebra> {
    let f = family(name)?;
    let bindings: Bindings = params.iter().map(|(k, v)| (transliterate(k), v.clone())).collect();
    for k in bindings.keys() {
        if !f.params.contains(&k.as_str()) {
            return Err(Error::InvalidInput(format!("{} has no parameter '{k}'", f.name)));
        }
    }
    for k in f.params {
        if !bindings.contains_key(*k) {
            return Err(Error::UnboundParameter(k.to_string()));
        }
    }
    if !(f.check)(&bindings) {
        return Err(Error::ConstraintViolated(format!("{} requires {}", f.name, f.constraint)));
    }
    parse_salamon(f.differentials, &bindings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::salamon::salamon;
    use crate::scalar::{int, q};

    fn b(pairs: &[(&str, Scalar)]) -> Bindings {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn table_constraints() {
        assert_eq!(named_algebra("r'_{3,λ}", &b(&[("λ", int(0))])).unwrap(), salamon("(0,31,-21)").unwrap());
        assert!(matches!(
            named_algebra("r_{4,mu,lambda}", &b(&[("mu", int(1)), ("lambda", int(2))])),
            Err(Error::ConstraintViolated(_))
        ));
        let n61 = b(&[("alpha", q(-1, 2)), ("beta", q(-1, 2)), ("gamma", int(0)), ("delta", int(0))]);
        assert!(matches!(named_algebra("N_{6,1}^{α,β,γ,δ}", &n61), Err(Error::ConstraintViolated(_))));
        assert!(matches!(named_algebra("g6_11", &b(&[("alpha", int(1))])), Err(Error::UnboundParameter(_))));
        assert!(matches!(named_algebra("nope", &Bindings::new()), Err(Error::UnknownName(_))));
        assert_eq!(family("g_{5,17}").unwrap().name, "g_{5,17}^{alpha,beta,gamma}");
        assert!(named_algebra("g_{5,17}^{alpha,beta,gamma}", &b(&[("alpha", int(0)), ("beta", int(0)), ("gamma", int(0))]))
            .is_err());
    }

    #[test]
    fn every_family_parses_at_a_valid_point() {
        for f in FAMILIES {
            let params: Bindings = f.params.iter().map(|k| (k.to_string(), q(1, 2))).collect();
            let l = named_algebra(f.name, &params).unwrap();
            assert_eq!(l.dim(), f.dim);
        }
    }
}
