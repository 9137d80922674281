//! The original Porter (1980) suffix-stripping stemmer.
//!
//! Operates on lowercase ASCII letters. Words of one or two letters and
//! tokens containing anything else (digits, hyphens, `#`, non-ASCII) are
//! returned unchanged.

use alloc::string::String;
use alloc::vec::Vec;

pub fn stem(word: &str) -> String {
    if word.len() <= 2 || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.into();
    }
    let mut w = Word(word.as_bytes().to_vec());
    w.step1a();
    w.step1b();
    w.step1c();
    w.step2();
    w.step3();
    w.step4();
    w.step5();
    // Only ASCII letters are ever written.
    String::from_utf8(w.0).unwrap_or_default()
}

struct Word(Vec<u8>);

impl Word {
    fn is_consonant(&self, i: usize) -> bool {
        match self.0[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.is_consonant(i - 1),
            _ => true,
        }
    }

    /// Number of VC sequences in the first `len` letters.
    fn measure(&self, len: usize) -> usize {
        let mut m = 0;
        let mut i = 0;
        while i < len && self.is_consonant(i) {
            i += 1;
        }
        loop {
            while i < len && !self.is_consonant(i) {
                i += 1;
            }
            if i >= len {
                return m;
            }
            while i < len && self.is_consonant(i) {
                i += 1;
            }
            m += 1;
        }
    }

    fn has_vowel(&self, len: usize) -> bool {
        (0..len).any(|i| !self.is_consonant(i))
    }

    fn ends_double_consonant(&self, len: usize) -> bool {
        len >= 2 && self.0[len - 1] == self.0[len - 2] && self.is_consonant(len - 1)
    }

    /// `*o`: stem ends consonant-vowel-consonant, last not w, x or y.
    fn ends_cvc(&self, len: usize) -> bool {
        len >= 3
            && self.is_consonant(len - 3)
            && !self.is_consonant(len - 2)
            && self.is_consonant(len - 1)
            && !matches!(self.0[len - 1], b'w' | b'x' | b'y')
    }

    fn ends_with(&self, suffix: &str) -> bool {
        self.0.ends_with(suffix.as_bytes())
    }

    fn replace_suffix(&mut self, suffix_len: usize, replacement: &str) {
        self.0.truncate(self.0.len() - suffix_len);
        self.0.extend_from_slice(replacement.as_bytes());
    }

    /// Applies the longest matching rule whose stem measure exceeds
    /// `min_measure`. A matching suffix whose condition fails ends the step.
    fn apply_rules(&mut self, rules: &[(&str, &str)], min_measure: usize) {
        let matched = rules
            .iter()
            .filter(|(s, _)| self.ends_with(s))
            .max_by_key(|(s, _)| s.len());
        if let Some((suffix, repl)) = matched {
            let stem_len = self.0.len() - suffix.len();
            if self.measure(stem_len) > min_measure {
                self.replace_suffix(suffix.len(), repl);
            }
        }
    }

    fn step1a(&mut self) {
        if self.ends_with("sses") {
            self.replace_suffix(4, "ss");
        } else if self.ends_with("ies") {
            self.replace_suffix(3, "i");
        } else if self.ends_with("ss") {
        } else if self.ends_with("s") {
            self.replace_suffix(1, "");
        }
    }

    fn step1b(&mut self) {
        let len = self.0.len();
        if self.ends_with("eed") {
            if self.measure(len - 3) > 0 {
                self.replace_suffix(3, "ee");
            }
            return;
        }
        let removed = if self.ends_with("ed") && self.has_vowel(len - 2) {
            self.replace_suffix(2, "");
            true
        } else if self.ends_with("ing") && self.has_vowel(len - 3) {
            self.replace_suffix(3, "");
            true
        } else {
            false
        };
        if !removed {
            return;
        }
        let len = self.0.len();
        if self.ends_with("at") || self.ends_with("bl") || self.ends_with("iz") {
            self.0.push(b'e');
        } else if self.ends_double_consonant(len) && !matches!(self.0[len - 1], b'l' | b's' | b'z') {
            self.0.pop();
        } else if self.measure(len) == 1 && self.ends_cvc(len) {
            self.0.push(b'e');
        }
    }

    fn step1c(&mut self) {
        let len = self.0.len();
        if self.ends_with("y") && self.has_vowel(len - 1) {
            self.0[len - 1] = b'i';
        }
    }

    fn step2(&mut self) {
        const RULES: [(&str, &str); 20] = [
            ("ational", "ate"),
            ("tional", "tion"),
            ("enci", "ence"),
            ("anci", "ance"),
            ("izer", "ize"),
            ("abli", "able"),
            ("alli", "al"),
            ("entli", "ent"),
            ("eli", "e"),
            ("ousli", "ous"),
            ("ization", "ize"),
            ("ation", "ate"),
            ("ator", "ate"),
            ("alism", "al"),
            ("iveness", "ive"),
            ("fulness", "ful"),
            ("ousness", "ous"),
            ("aliti", "al"),
            ("iviti", "ive"),
            ("biliti", "ble"),
        ];
        self.apply_rules(&RULES, 0);
    }

    fn step3(&mut self) {
        const RULES: [(&str, &str); 7] = [
            ("icate", "ic"),
            ("ative", ""),
            ("alize", "al"),
            ("iciti", "ic"),
            ("ical", "ic"),
            ("ful", ""),
            ("ness", ""),
        ];
        self.apply_rules(&RULES, 0);
    }

    fn step4(&mut self) {
        const SUFFIXES: [&str; 19] = [
            "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment", "ent", "ion", "ou", "ism", "ate",
            "iti", "ous", "ive", "ize",
        ];
        let Some(suffix) = SUFFIXES.iter().filter(|s| self.ends_with(s)).max_by_key(|s| s.len()) else {
            return;
        };
        let stem_len = self.0.len() - suffix.len();
        let ok = self.measure(stem_len) > 1
            && (*suffix != "ion" || (stem_len > 0 && matches!(self.0[stem_len - 1], b's' | b't')));
        if ok {
            self.0.truncate(stem_len);
        }
    }

    fn step5(&mut self) {
        let len = self.0.len();
        if self.ends_with("e") {
            let m = self.measure(len - 1);
            if m > 1 || (m == 1 && !self.ends_cvc(len - 1)) {
                self.0.pop();
            }
        }
        let len = self.0.len();
        if self.measure(len) > 1 && self.ends_double_consonant(len) && self.0[len - 1] == b'l' {
            self.0.pop();
        }
    }
}
