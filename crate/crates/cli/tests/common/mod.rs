//! Test helpers: spawning the binary and checking documents against the
//! published schemas.
#![allow(dead_code)] // each test target compiles its own copy
//!
//! The schema checker covers exactly the subset the shipped schemas use:
//! `type`, `required`, `properties`, `patternProperties` (with the two key
//! patterns we publish), `additionalProperties: false`, `items`, tuple
//! `items`, `minItems`, `maxItems`, `enum`, `pattern` and file-relative
//! `$ref`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hms"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn run_json(args: &[&str]) -> (Value, Output) {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout of {:?} is not JSON ({e}): {}",
            args,
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (value, out)
}

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

pub fn load_schema(name: &str) -> Value {
    let path = schema_dir().join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read schema {path:?}: {e}"));
    serde_json::from_str(&text).expect("schema parses")
}

pub fn assert_valid(name: &str, value: &Value) {
    let schema = load_schema(name);
    let mut errors = Vec::new();
    validate(&schema, value, "$", &mut errors);
    assert!(errors.is_empty(), "{name} violations: {errors:#?}\n{value:#}");
}

fn pattern_matches(pattern: &str, s: &str) -> bool {
    match pattern {
        "^[0-9]+,[0-9]+$" => {
            let Some((a, b)) = s.split_once(',') else {
                return false;
            };
            !a.is_empty()
                && !b.is_empty()
                && a.bytes().all(|c| c.is_ascii_digit())
                && b.bytes().all(|c| c.is_ascii_digit())
        }
        "^-?[0-9]\\.[0-9]{16}e-?[0-9]+$" => {
            let s = s.strip_prefix('-').unwrap_or(s);
            let bytes = s.as_bytes();
            if bytes.len() < 20 || !bytes[0].is_ascii_digit() || bytes[1] != b'.' {
                return false;
            }
            let mantissa = &s[2..18];
            if !mantissa.bytes().all(|c| c.is_ascii_digit()) || bytes.get(18) != Some(&b'e') {
                return false;
            }
            let exp = &s[19..];
            let exp = exp.strip_prefix('-').unwrap_or(exp);
            !exp.is_empty() && exp.bytes().all(|c| c.is_ascii_digit())
        }
        // Unknown patterns are not used by the shipped schemas.
        _ => true,
    }
}

fn validate(schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        let resolved = load_schema(reference);
        validate(&resolved, value, path, errors);
        return;
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            errors.push(format!("{path}: {value} not in enum"));
        }
        return;
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            other => {
                errors.push(format!("{path}: unsupported type `{other}` in schema"));
                return;
            }
        };
        if !ok {
            errors.push(format!("{path}: expected {ty}, got {value}"));
            return;
        }
    }
    if let (Some(pattern), Some(s)) = (
        schema.get("pattern").and_then(Value::as_str),
        value.as_str(),
    ) {
        if !pattern_matches(pattern, s) {
            errors.push(format!("{path}: `{s}` does not match `{pattern}`"));
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    errors.push(format!("{path}: missing required `{key}`"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        let pattern_props = schema.get("patternProperties").and_then(Value::as_object);
        let additional = schema
            .get("additionalProperties")
            .and_then(Value::as_bool)
            .unwrap_or(true);
        for (key, val) in obj {
            let sub_path = format!("{path}.{key}");
            if let Some(sub) = props.and_then(|p| p.get(key)) {
                validate(sub, val, &sub_path, errors);
            } else if let Some(pp) = pattern_props {
                let mut matched = false;
                for (pat, sub) in pp {
                    if pattern_matches(pat, key) {
                        matched = true;
                        validate(sub, val, &sub_path, errors);
                    }
                }
                if !matched && !additional {
                    errors.push(format!("{path}: unexpected key `{key}`"));
                }
            } else if !additional {
                errors.push(format!("{path}: unexpected key `{key}`"));
            }
        }
    }
    if let Some(arr) = value.as_array() {
        if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < min {
                errors.push(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(max) = schema.get("maxItems").and_then(Value::as_u64) {
            if (arr.len() as u64) > max {
                errors.push(format!("{path}: more than {max} items"));
            }
        }
        match schema.get("items") {
            Some(Value::Array(tuple)) => {
                for (idx, (sub, val)) in tuple.iter().zip(arr).enumerate() {
                    validate(sub, val, &format!("{path}[{idx}]"), errors);
                }
            }
            Some(sub) => {
                for (idx, val) in arr.iter().enumerate() {
                    validate(sub, val, &format!("{path}[{idx}]"), errors);
                }
            }
            None => {}
        }
    }
}
