//! Splitting `--name RANGE` case parameters from ordinary options.

/// Case parameters found among trailing arguments, and the tokens left for the option parser.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Split {
    pub params: Vec<(String, String)>,
    pub rest: Vec<String>,
}

/// `is_param` names case parameters; `takes_value` tells whether another option consumes the next token.
pub fn split_params(
    tokens: &[String],
    is_param: impl Fn(&str) -> bool,
    takes_value: impl Fn(&str) -> bool,
) -> Result<Split, String> {
    let mut out = Split::default();
    let mut i = 0;
    while i < tokens.len() {
        let tok = &tokens[i];
        let Some(body) = tok.strip_prefix("--") else {
            return Err(format!("unexpected argument `{tok}`; parameters are given as `--name RANGE`"));
        };
        let (name, inline) = match body.split_once('=') {
            Some((n, v)) => (n, Some(v.to_string())),
            None => (body, None),
        };
        if is_param(name) {
            let value = match inline {
                Some(v) => v,
                None => {
                    i += 1;
                    tokens.get(i).cloned().ok_or_else(|| format!("parameter --{name} needs a value"))?
                }
            };
            if out.params.iter().any(|(n, _)| n == name) {
                return Err(format!("parameter --{name} given twice"));
            }
            out.params.push((name.to_string(), value));
        } else {
            out.rest.push(tok.clone());
            if inline.is_none() && takes_value(name) {
                if let Some(v) = tokens.get(i + 1) {
                    out.rest.push(v.clone());
                    i += 1;
                }
            }
        }
        i += 1;
    }
    Ok(out)
}
