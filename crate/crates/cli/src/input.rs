//! Parsing of sequence and operator arguments.

use std::fs;

use cesaro_core::operators::eigenvector;
use cesaro_core::seq::{canonical, ell1_not_d1_witness, geometric, squares_witness, xi};
use cesaro_core::{Error, OperatorSpec, Result, Seq};

/// Reads a sequence argument:
///
/// - a JSON array, e.g. `[1, 0.5, 0.25]`
/// - `@path` to a file holding a JSON array
/// - a generator: `e:K`, `ones`, `xi`, `geometric:R`, `squares`,
///   `eigen:M` (uses `t`), `ell1-not-d1:B`
///
/// Generators other than `ell1-not-d1` produce `n` entries.
pub fn parse_sequence(text: &str, n: usize, t: f64) -> Result<Seq> {
    let text = text.trim();
    if let Some(path) = text.strip_prefix('@') {
        return parse_sequence(&fs::read_to_string(path)?, n, t);
    }
    if text.starts_with('[') {
        return Ok(serde_json::from_str(text)?);
    }
    let (name, arg) = match text.split_once(':') {
        Some((name, arg)) => (name, Some(arg)),
        None => (text, None),
    };
    let number = |what: &str| -> Result<f64> {
        arg.ok_or_else(|| Error::Parse(format!("`{name}` needs a {what}, e.g. `{name}:2`")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad {what} in `{text}`")))
    };
    let index = |what: &str| -> Result<usize> {
        let v = number(what)?;
        if v >= 0.0 && v.fract() == 0.0 {
            Ok(v as usize)
        } else {
            Err(Error::Parse(format!(
                "{what} in `{text}` must be a nonnegative integer"
            )))
        }
    };
    match name {
        "e" => canonical(index("index")?, n),
        "ones" => Seq::ones(n),
        "xi" => xi(n),
        "geometric" => geometric(number("ratio")?, n),
        "squares" => squares_witness(n),
        "eigen" => eigenvector(t, index("index")?, n),
        "ell1-not-d1" => ell1_not_d1_witness(index("block count")? as u32),
        _ => Err(Error::Parse(format!("unknown sequence `{text}`"))),
    }
}

/// Reads an operator argument: `cesaro`, `diagonal`, `shift:M`,
/// `resolvent:M`, `diagonal-truncated:M`, `cesaro-truncated:M`,
/// `conv:[a0, a1, ...]`, or a JSON object. `t` fills the operators that
/// take one.
pub fn parse_operator(text: &str, t: f64) -> Result<OperatorSpec> {
    let text = text.trim();
    if text.starts_with('{') {
        let op: OperatorSpec = serde_json::from_str(text)?;
        op.validate()?;
        return Ok(op);
    }
    let (name, arg) = match text.split_once(':') {
        Some((name, arg)) => (name, Some(arg)),
        None => (text, None),
    };
    let order = || -> Result<usize> {
        arg.ok_or_else(|| Error::Parse(format!("`{name}` needs an order, e.g. `{name}:3`")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad order in `{text}`")))
    };
    let op = match name {
        "cesaro" => OperatorSpec::CesaroT { t },
        "diagonal" => OperatorSpec::Diagonal,
        "shift" => OperatorSpec::Shift { m: order()? },
        "resolvent" => OperatorSpec::ResolventPartial { t, order: order()? },
        "diagonal-truncated" => OperatorSpec::DiagonalTruncated { order: order()? },
        "cesaro-truncated" => OperatorSpec::CesaroTruncated { t, order: order()? },
        "conv" => OperatorSpec::Convolution {
            a: serde_json::from_str(arg.unwrap_or(""))
                .map_err(|e| Error::Parse(format!("`conv` needs a JSON array: {e}")))?,
        },
        _ => return Err(Error::Parse(format!("unknown operator `{text}`"))),
    };
    op.validate()?;
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences() {
        assert_eq!(
            parse_sequence("[1, 2]", 5, 0.0).unwrap().as_slice(),
            &[1.0, 2.0]
        );
        assert_eq!(
            parse_sequence("e:1", 3, 0.0).unwrap().as_slice(),
            &[0.0, 1.0, 0.0]
        );
        assert_eq!(
            parse_sequence("eigen:1", 4, 0.5).unwrap().as_slice(),
            &[0.0, 1.0, 1.0, 0.75]
        );
        assert_eq!(parse_sequence("ell1-not-d1:3", 1, 0.0).unwrap().len(), 7);
        assert!(parse_sequence("e", 3, 0.0).is_err());
        assert!(parse_sequence("e:1.5", 3, 0.0).is_err());
        assert!(parse_sequence("nope", 3, 0.0).is_err());
        assert!(parse_sequence("[]", 3, 0.0).is_err());
    }

    #[test]
    fn operators() {
        assert_eq!(
            parse_operator("cesaro", 0.5).unwrap(),
            OperatorSpec::CesaroT { t: 0.5 }
        );
        assert_eq!(
            parse_operator("shift:3", 0.0).unwrap(),
            OperatorSpec::Shift { m: 3 }
        );
        assert!(matches!(
            parse_operator("conv:[1, 0.5]", 0.0).unwrap(),
            OperatorSpec::Convolution { .. }
        ));
        assert!(parse_operator("resolvent", 0.5).is_err());
        assert!(parse_operator("cesaro", 1.5).is_err());
    }
}
