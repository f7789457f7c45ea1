use std::env;

pub const CAPS_VAR: &str = "ERARRAY_CAPS";

/// Size limits for the generating commands. Overridden through
/// `ERARRAY_CAPS="rows=64,hankel=8,depth=16"` (any subset of keys).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub rows: usize,
    pub hankel: usize,
    pub depth: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            rows: 64,
            hankel: 8,
            depth: 16,
        }
    }
}

impl Caps {
    pub fn from_env() -> Result<Caps, String> {
        match env::var(CAPS_VAR) {
            Ok(text) => Caps::parse(&text),
            Err(env::VarError::NotPresent) => Ok(Caps::default()),
            Err(e) => Err(format!("{CAPS_VAR}: {e}")),
        }
    }

    pub fn parse(text: &str) -> Result<Caps, String> {
        let mut caps = Caps::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| format!("{CAPS_VAR}: expected key=value, got {item:?}"))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|e| format!("{CAPS_VAR}: {key}: {e}"))?;
            match key.trim() {
                "rows" => caps.rows = value,
                "hankel" => caps.hankel = value,
                "depth" => caps.depth = value,
                other => return Err(format!("{CAPS_VAR}: unknown cap {other:?}")),
            }
        }
        Ok(caps)
    }

    pub fn check(what: &str, value: usize, cap: usize) -> Result<(), String> {
        if value > cap {
            Err(format!(
                "{what} = {value} exceeds the cap of {cap} (raise it with {CAPS_VAR})"
            ))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_overrides() {
        assert_eq!(Caps::parse("").unwrap(), Caps::default());
        let c = Caps::parse("hankel=3, depth=4").unwrap();
        assert_eq!((c.rows, c.hankel, c.depth), (64, 3, 4));
        assert!(Caps::parse("rows").is_err());
        assert!(Caps::parse("cols=3").is_err());
        assert!(Caps::parse("rows=-1").is_err());
    }
}
