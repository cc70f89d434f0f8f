//! Turning command-line text and files into library values.

use std::path::Path;

use bifix::{Alphabet, Dfa, Error, FiniteCode, GroupCodeSpec, LanguageSource, Result, Substitution};

use crate::{CodeArgs, SecondSourceArgs, SourceArgs};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn source_of(rules: Option<&str>, rules_json: Option<&Path>, periodic: Option<&str>) -> Result<Option<LanguageSource>> {
    match (rules, rules_json, periodic) {
        (None, None, None) => Ok(None),
        (Some(r), None, None) => Ok(Some(Substitution::parse(r)?.into())),
        (None, Some(p), None) => Ok(Some(Substitution::from_json(&read(p)?)?.into())),
        (None, None, Some(w)) => Ok(Some(LanguageSource::periodic(w)?)),
        _ => Err(Error::InvalidInput("give at most one language source".into())),
    }
}

impl SourceArgs {
    pub fn optional(&self) -> Result<Option<LanguageSource>> {
        source_of(self.rules.as_deref(), self.rules_json.as_deref(), self.periodic.as_deref())
    }

    pub fn required(&self) -> Result<LanguageSource> {
        self.optional()?
            .ok_or_else(|| Error::InvalidInput("a language is required: --rules, --rules-json or --periodic".into()))
    }
}

impl SecondSourceArgs {
    pub fn required(&self) -> Result<LanguageSource> {
        source_of(self.rules2.as_deref(), self.rules_json2.as_deref(), self.periodic2.as_deref())?.ok_or_else(|| {
            Error::InvalidInput("a second language is required: --rules2, --rules-json2 or --periodic2".into())
        })
    }
}

/// A code as given on the command line.
#[derive(Clone, Debug)]
pub enum CodeInput {
    Power(usize),
    List(String),
    Automaton(String),
}

impl CodeInput {
    pub fn describe(&self) -> String {
        match self {
            CodeInput::Power(n) => format!("A^{n}"),
            CodeInput::List(s) => s.clone(),
            CodeInput::Automaton(_) => "automaton".into(),
        }
    }
}

fn parse_power(text: &str) -> Option<Result<usize>> {
    let n = text.trim().strip_prefix("A^")?;
    Some(
        n.trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad power code {text:?}"))),
    )
}

impl CodeArgs {
    pub fn optional(&self) -> Result<Option<CodeInput>> {
        match (&self.code, &self.dfa) {
            (None, None) => Ok(None),
            (Some(c), None) => Ok(Some(match parse_power(c) {
                Some(n) => CodeInput::Power(n?),
                None => CodeInput::List(c.clone()),
            })),
            (None, Some(p)) => Ok(Some(CodeInput::Automaton(read(p)?))),
            _ => Err(Error::InvalidInput("give either --code or --dfa".into())),
        }
    }

    pub fn required(&self) -> Result<CodeInput> {
        self.optional()?
            .ok_or_else(|| Error::InvalidInput("a code is required: --code or --dfa".into()))
    }

    /// The alphabet: the language's, else `--alphabet`, else read off the
    /// code (sorted letters) or the automaton's transition table.
    pub fn alphabet(&self, source: Option<&LanguageSource>, code: &CodeInput) -> Result<Alphabet> {
        let explicit = match &self.alphabet {
            Some(text) => Some(Alphabet::new(Alphabet::tokenize(text)?)?),
            None => None,
        };
        match (source, explicit) {
            (Some(s), Some(a)) if s.alphabet() != &a => {
                Err(Error::InvalidInput("--alphabet differs from the language's alphabet".into()))
            }
            (Some(s), _) => Ok(s.alphabet().clone()),
            (None, Some(a)) => Ok(a),
            (None, None) => match code {
                CodeInput::Power(_) => Ok(Alphabet::from_chars("ab")?),
                CodeInput::List(text) => {
                    let mut names: Vec<String> = Vec::new();
                    for w in text.split(',') {
                        names.extend(Alphabet::tokenize(w)?);
                    }
                    names.sort();
                    names.dedup();
                    Alphabet::new(names)
                }
                CodeInput::Automaton(text) => {
                    let v: serde_json::Value = serde_json::from_str(text)
                        .map_err(|e| Error::InvalidInput(format!("automaton JSON: {e}")))?;
                    let names: Vec<String> = v["delta"]
                        .as_object()
                        .ok_or_else(|| Error::InvalidInput("automaton JSON lacks a delta object".into()))?
                        .keys()
                        .cloned()
                        .collect();
                    Alphabet::new(names)
                }
            },
        }
    }
}

/// A finite code over `alphabet`; automata are not finite codes here.
pub fn finite_code(input: &CodeInput, alphabet: &Alphabet) -> Result<FiniteCode> {
    match input {
        CodeInput::Power(n) => FiniteCode::power(alphabet, *n),
        CodeInput::List(text) => FiniteCode::parse(alphabet, text),
        CodeInput::Automaton(_) => Err(Error::InvalidInput("this command needs a finite code, not --dfa".into())),
    }
}

pub fn automaton(input: &CodeInput, alphabet: &Alphabet) -> Result<Dfa> {
    match input {
        CodeInput::Automaton(text) => Dfa::from_json(alphabet, text),
        _ => Ok(Dfa::of_star(&finite_code(input, alphabet)?)),
    }
}

pub fn group_code(input: &CodeInput, alphabet: &Alphabet) -> Result<GroupCodeSpec> {
    match input {
        CodeInput::Power(n) => GroupCodeSpec::power(*n),
        CodeInput::List(_) => GroupCodeSpec::from_code(&finite_code(input, alphabet)?),
        CodeInput::Automaton(text) => GroupCodeSpec::from_dfa("automaton", &Dfa::from_json(alphabet, text)?),
    }
}
