use serde::{Deserialize, Serialize};

/// A token with byte offsets into the text it was cut from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn is_punct(&self) -> bool {
        self.surface.chars().all(|c| !c.is_alphanumeric())
    }

    pub fn lower(&self) -> String {
        self.surface.to_lowercase()
    }
}

/// Characters that always form a token of their own.
fn is_hard_punct(c: char) -> bool {
    matches!(c, '(' | ')' | '?' | ';' | '!' | '"' | '[' | ']' | '“' | '”')
}

/// `.`, `,` and `:` stay inside a token only when flanked by alphanumerics
/// (`1.0`, `20,000`, `e.g`); otherwise they are split off.
fn is_soft_punct(c: char) -> bool {
    matches!(c, '.' | ',' | ':')
}

/// Splits text on whitespace and punctuation. Hyphens and slashes never split.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;

    let flush = |tokens: &mut Vec<Token>, start: &mut Option<usize>, end: usize| {
        if let Some(s) = start.take() {
            tokens.push(Token {
                surface: text[s..end].to_string(),
                start: s,
                end,
            });
        }
    };

    for (i, &(off, c)) in chars.iter().enumerate() {
        if c.is_whitespace() {
            flush(&mut tokens, &mut start, off);
            continue;
        }
        let split = if is_hard_punct(c) {
            true
        } else if is_soft_punct(c) {
            let prev = i.checked_sub(1).map(|j| chars[j].1);
            let next = chars.get(i + 1).map(|&(_, n)| n);
            !(start.is_some()
                && prev.is_some_and(char::is_alphanumeric)
                && next.is_some_and(char::is_alphanumeric))
        } else {
            false
        };
        if split {
            flush(&mut tokens, &mut start, off);
            let end = off + c.len_utf8();
            tokens.push(Token {
                surface: text[off..end].to_string(),
                start: off,
                end,
            });
        } else if start.is_none() {
            start = Some(off);
        }
    }
    flush(&mut tokens, &mut start, text.len());
    tokens
}
