//! Geometry descriptor grammar:
//!
//! ```text
//! desc := sphere M N [SCALE]
//!       | torus M N
//!       | product CHILD CHILD
//!       | file PATH
//! child := ( desc )
//! ```
//!
//! Built-in factors carry their closed-form Yamabe constant as a
//! reference (spheres of dimension ≥ 3, tori have reference 0); files and
//! nested products do not.

use yamabe_core::discrete::{flat_torus, load_spec, product, sphere_latitude, DiscreteManifold};
use yamabe_core::invariants::sphere_yamabe;
use yamabe_core::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Descriptor {
    Sphere { m: u32, n: u32, scale: f64 },
    Torus { m: u32, n: u32 },
    Product(Box<Descriptor>, Box<Descriptor>),
    File(String),
}

/// A realized descriptor: the manifold plus, when known in closed form,
/// the reference constant for sandwich assembly.
pub struct Geometry {
    pub manifold: DiscreteManifold,
    pub mu_reference: Option<f64>,
}

pub fn parse(text: &str) -> Result<Descriptor> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let mut pos = 0;
    let desc = parse_desc(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::InvalidParameter(format!(
            "trailing tokens after descriptor: {:?}",
            &tokens[pos..]
        )));
    }
    Ok(desc)
}

fn next<'a>(tokens: &[&'a str], pos: &mut usize) -> Result<&'a str> {
    let t = tokens
        .get(*pos)
        .ok_or_else(|| Error::InvalidParameter("descriptor ended unexpectedly".into()))?;
    *pos += 1;
    Ok(t)
}

fn parse_u32(tokens: &[&str], pos: &mut usize, what: &str) -> Result<u32> {
    let t = next(tokens, pos)?;
    t.parse()
        .map_err(|_| Error::InvalidParameter(format!("{what}: expected integer, got {t:?}")))
}

fn parse_desc(tokens: &[&str], pos: &mut usize) -> Result<Descriptor> {
    match next(tokens, pos)? {
        "sphere" => {
            let m = parse_u32(tokens, pos, "sphere dimension")?;
            let n = parse_u32(tokens, pos, "sphere cell count")?;
            // optional scale: present when the next token is a bare number
            let scale = match tokens.get(*pos) {
                Some(t) if t.parse::<f64>().is_ok() => {
                    *pos += 1;
                    t.parse().unwrap()
                }
                _ => 1.0,
            };
            Ok(Descriptor::Sphere { m, n, scale })
        }
        "torus" => {
            let m = parse_u32(tokens, pos, "torus dimension")?;
            let n = parse_u32(tokens, pos, "torus cells per axis")?;
            Ok(Descriptor::Torus { m, n })
        }
        "product" => {
            let a = parse_child(tokens, pos)?;
            let b = parse_child(tokens, pos)?;
            Ok(Descriptor::Product(Box::new(a), Box::new(b)))
        }
        "file" => Ok(Descriptor::File(next(tokens, pos)?.to_string())),
        other => Err(Error::InvalidParameter(format!(
            "unknown geometry {other:?}; expected sphere, torus, product, or file"
        ))),
    }
}

fn parse_child(tokens: &[&str], pos: &mut usize) -> Result<Descriptor> {
    if next(tokens, pos)? != "(" {
        return Err(Error::InvalidParameter(
            "product factors must be parenthesized, e.g. product (sphere 3 100) (sphere 3 100)"
                .into(),
        ));
    }
    let d = parse_desc(tokens, pos)?;
    if next(tokens, pos)? != ")" {
        return Err(Error::InvalidParameter("missing closing parenthesis".into()));
    }
    Ok(d)
}

/// Builds the manifold for a descriptor. For a top-level product the
/// factors are returned too, so the caller can check the curvature
/// hypothesis and assemble a sandwich.
pub fn realize(desc: &Descriptor) -> Result<Geometry> {
    match desc {
        Descriptor::Sphere { m, n, scale } => Ok(Geometry {
            manifold: sphere_latitude(*m, *n, *scale)?,
            mu_reference: if *m >= 3 { Some(sphere_yamabe(*m)?) } else { None },
        }),
        Descriptor::Torus { m, n } => Ok(Geometry {
            manifold: flat_torus(*m, *n)?,
            mu_reference: Some(0.0),
        }),
        Descriptor::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Document(format!("cannot read {path}: {e}"))
            })?;
            Ok(Geometry { manifold: load_spec(&text)?, mu_reference: None })
        }
        Descriptor::Product(a, b) => {
            let left = realize(a)?;
            let right = realize(b)?;
            Ok(Geometry {
                manifold: product(&left.manifold, &right.manifold)?,
                mu_reference: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_builtins() {
        assert_eq!(
            parse("sphere 3 2000").unwrap(),
            Descriptor::Sphere { m: 3, n: 2000, scale: 1.0 }
        );
        assert_eq!(
            parse("sphere 3 100 0.5").unwrap(),
            Descriptor::Sphere { m: 3, n: 100, scale: 0.5 }
        );
        assert_eq!(parse("torus 3 8").unwrap(), Descriptor::Torus { m: 3, n: 8 });
        let p = parse("product (sphere 3 10) (torus 4 2)").unwrap();
        assert_eq!(
            p,
            Descriptor::Product(
                Box::new(Descriptor::Sphere { m: 3, n: 10, scale: 1.0 }),
                Box::new(Descriptor::Torus { m: 4, n: 2 }),
            )
        );
    }

    #[test]
    fn parses_nested_products() {
        let p = parse("product (product (sphere 3 8) (sphere 3 8)) (sphere 3 8)").unwrap();
        match p {
            Descriptor::Product(a, _) => assert!(matches!(*a, Descriptor::Product(_, _))),
            _ => panic!("expected product"),
        }
    }

    #[test]
    fn rejects_malformed_descriptors() {
        assert!(parse("").is_err());
        assert!(parse("circle 1 10").is_err());
        assert!(parse("sphere 3").is_err());
        assert!(parse("product sphere 3 10 sphere 3 10").is_err());
        assert!(parse("product (sphere 3 10) (sphere 3 10) extra").is_err());
        assert!(parse("product (sphere 3 10 (sphere 3 10)").is_err());
    }
}
