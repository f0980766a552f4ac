//! Argument decoding. JSON arguments are inline text, `@path` for a file, or
//! `-` for standard input.

use std::io::Read;

use kucera_core::cantor::rational::parse_rational;
use kucera_core::transforms::{embed_bidirectional, BiAssignment};
use kucera_core::cantor::GeneratorDescriptor;
use kucera_core::{ClopenSet, EffOpenDescriptor, Error, Rational, Result, TransformDescriptor, TransformSpec, Word};
use serde::de::DeserializeOwned;
use serde_json::Value;

pub fn read_source(flag: &str, raw: &str) -> Result<String> {
    if raw == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Malformed(format!("{flag}: reading stdin: {e}")))?;
        Ok(s)
    } else if let Some(path) = raw.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{flag}: {path}: {e}")))
    } else {
        Ok(raw.to_string())
    }
}

fn path_error<E: std::fmt::Display>(flag: &str, e: serde_path_to_error::Error<E>) -> Error {
    let path = e.path().to_string();
    Error::Malformed(format!("{flag} at `{path}`: {}", e.into_inner()))
}

/// Decodes a JSON argument; errors name the flag and the JSON path.
pub fn json<T: DeserializeOwned>(flag: &str, raw: &str) -> Result<T> {
    let text = read_source(flag, raw)?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| path_error(flag, e))
}

fn from_value<T: DeserializeOwned>(flag: &str, v: Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| path_error(flag, e))
}

/// A word array for an exact set, or a generator object for an enumerated one.
pub fn eff_open(flag: &str, raw: &str) -> Result<EffOpenDescriptor> {
    let v: Value = json(flag, raw)?;
    if v.is_object() {
        Ok(EffOpenDescriptor::Generator(from_value::<GeneratorDescriptor>(flag, v)?))
    } else {
        Ok(EffOpenDescriptor::Inline(from_value::<ClopenSet>(flag, v)?))
    }
}

pub fn rational(flag: &str, raw: &str) -> Result<Rational> {
    parse_rational(raw).map_err(|e| Error::Malformed(format!("{flag}: {e}")))
}

pub fn word(flag: &str, raw: &str) -> Result<Word> {
    raw.parse().map_err(|e| Error::Malformed(format!("{flag}: {e}")))
}

/// A bare built-in name such as `odometer` or `bidirectional_shift(2)`, or a
/// JSON descriptor.
pub fn transform(flag: &str, raw: &str) -> Result<TransformSpec> {
    let text = read_source(flag, raw)?;
    let trimmed = text.trim();
    let desc = if trimmed.starts_with('{') {
        TransformDescriptor::from_json(trimmed)?
    } else {
        TransformDescriptor::by_name(trimmed)?
    };
    Ok(desc.build())
}

/// A bidirectional set: zig-zag words, or a union of partial assignments
/// `{"index": bit}`.
pub fn bi_set(flag: &str, raw: &str) -> Result<ClopenSet> {
    let v: Value = json(flag, raw)?;
    let assignments = v.as_array().is_some_and(|xs| xs.iter().any(Value::is_object));
    if assignments {
        let xs: Vec<Assignment> = from_value(flag, v)?;
        Ok(ClopenSet::union_all(&xs.iter().map(|x| embed_bidirectional(&x.0)).collect::<Vec<_>>()))
    } else {
        from_value(flag, v)
    }
}

#[derive(serde::Deserialize)]
#[serde(transparent)]
struct Assignment(#[serde(with = "kucera_core::transforms::serde_assignment")] BiAssignment);

pub fn assignment(flag: &str, raw: &str) -> Result<BiAssignment> {
    Ok(json::<Assignment>(flag, raw)?.0)
}
