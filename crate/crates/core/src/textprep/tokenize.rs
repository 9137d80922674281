//! Treebank-flavoured word tokenizer for tweets.
//!
//! Text is lowercased and split on whitespace; punctuation is detached into
//! its own tokens, clitics are split off (`don't` -> `do`, `n't`), while
//! hashtags (`#covid19`) and hyphenated words (`covid-19`) stay whole.

use alloc::string::String;
use alloc::vec::Vec;

/// Characters allowed inside a word; stripped when leading or trailing.
fn is_inner_punct(c: char) -> bool {
    matches!(c, '-' | '_' | '\'' | '.')
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || is_inner_punct(c)
}

pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        let lowered: String = chunk
            .chars()
            .map(|c| if matches!(c, '\u{2019}' | '\u{2018}') { '\'' } else { c })
            .flat_map(char::to_lowercase)
            .collect();
        split_chunk(&lowered, &mut tokens);
    }
    tokens
}

fn split_chunk(chunk: &str, tokens: &mut Vec<String>) {
    let chars: Vec<char> = chunk.chars().collect();
    let mut word = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let next = chars.get(i + 1).copied();
        let prev = i.checked_sub(1).map(|p| chars[p]);
        let hashtag = c == '#' && word.is_empty() && next.is_some_and(char::is_alphanumeric);
        let thousands =
            c == ',' && prev.is_some_and(|p| p.is_ascii_digit()) && next.is_some_and(|n| n.is_ascii_digit());
        if is_word_char(c) || hashtag || thousands {
            word.push(c);
        } else {
            flush_word(&word, tokens);
            word.clear();
            tokens.push(String::from(c));
        }
    }
    flush_word(&word, tokens);
}

/// Pushes runs of identical characters as single tokens (`...`, `--`).
fn push_runs(s: &str, tokens: &mut Vec<String>) {
    let mut run = String::new();
    for c in s.chars() {
        if run.chars().next().is_some_and(|r| r != c) {
            tokens.push(core::mem::take(&mut run));
        }
        run.push(c);
    }
    if !run.is_empty() {
        tokens.push(run);
    }
}

fn flush_word(word: &str, tokens: &mut Vec<String>) {
    if word.is_empty() {
        return;
    }
    let start = word.find(|c: char| !is_inner_punct(c)).unwrap_or(word.len());
    push_runs(&word[..start], tokens);
    let rest = &word[start..];
    if rest.is_empty() {
        return;
    }
    let end = rest
        .char_indices()
        .rev()
        .find(|&(_, c)| !is_inner_punct(c))
        .map(|(i, c)| i + c.len_utf8())
        .unwrap_or(0);
    let (core, trailing) = rest.split_at(end);
    split_clitics(core, tokens);
    push_runs(trailing, tokens);
}

const CLITICS: [&str; 6] = ["'s", "'m", "'d", "'re", "'ve", "'ll"];

fn split_clitics(word: &str, tokens: &mut Vec<String>) {
    if word == "cannot" {
        tokens.push("can".into());
        tokens.push("not".into());
        return;
    }
    if word.len() > 3 && word.ends_with("n't") {
        tokens.push(word[..word.len() - 3].into());
        tokens.push("n't".into());
        return;
    }
    for clitic in CLITICS {
        if word.len() > clitic.len() && word.ends_with(clitic) {
            tokens.push(word[..word.len() - clitic.len()].into());
            tokens.push(clitic.into());
            return;
        }
    }
    tokens.push(word.into());
}

#[cfg(test)]
mod tests {
    use super::tokenize;

    fn tok(s: &str) -> alloc::vec::Vec<alloc::string::String> {
        tokenize(s)
    }

    #[test]
    fn contraction() {
        assert_eq!(tok("Don't panic."), ["do", "n't", "panic", "."]);
        assert_eq!(tok("We can't stop"), ["we", "ca", "n't", "stop"]);
        assert_eq!(tok("It\u{2019}s time"), ["it", "'s", "time"]);
        assert_eq!(tok("cannot"), ["can", "not"]);
    }

    #[test]
    fn empty() {
        assert!(tok("").is_empty());
        assert!(tok("   \t\n").is_empty());
    }

    #[test]
    fn hyphens_and_commas() {
        assert_eq!(
            tok("COVID-19 cases rise, sadly"),
            ["covid-19", "cases", "rise", ",", "sadly"]
        );
        assert_eq!(tok("1,000 tests"), ["1,000", "tests"]);
    }

    #[test]
    fn hashtags_and_mentions() {
        assert_eq!(
            tok("#COVID19 update @GovAndyBeshear!"),
            ["#covid19", "update", "@", "govandybeshear", "!"]
        );
        assert_eq!(tok("# alone"), ["#", "alone"]);
    }

    #[test]
    fn punctuation_runs() {
        assert_eq!(
            tok("wait... \"stay\" (home)"),
            ["wait", "...", "\"", "stay", "\"", "(", "home", ")"]
        );
        assert_eq!(tok("masks&amp;gloves"), ["masks", "&", "amp", ";", "gloves"]);
        assert_eq!(tok("U.S."), ["u.s", "."]);
    }
}
