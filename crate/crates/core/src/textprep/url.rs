/// Removes every `http://`, `https://` or `www.` run up to the next
/// whitespace character. Matching is ASCII case-insensitive.
pub fn strip_urls(text: &str) -> alloc::string::String {
    let bytes = text.as_bytes();
    let mut out = alloc::string::String::with_capacity(text.len());
    let mut i = 0;
    let mut copied = 0;
    while i < bytes.len() {
        if url_prefix_at(bytes, i) {
            out.push_str(&text[copied..i]);
            let rest = &text[i..];
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            i += end;
            copied = i;
        } else {
            i += 1;
        }
    }
    out.push_str(&text[copied..]);
    out
}

fn url_prefix_at(bytes: &[u8], i: usize) -> bool {
    const PREFIXES: [&[u8]; 3] = [b"http://", b"https://", b"www."];
    PREFIXES
        .iter()
        .any(|p| bytes.len() - i >= p.len() && bytes[i..i + p.len()].eq_ignore_ascii_case(p))
}

#[cfg(test)]
mod tests {
    use super::strip_urls;

    #[test]
    fn examples() {
        assert_eq!(strip_urls("see https://t.co/abc now"), "see  now");
        assert_eq!(strip_urls("no links here"), "no links here");
        assert_eq!(strip_urls("a http://x.y b https://z.w c"), "a  b  c");
        assert_eq!(strip_urls("visit www.cdc.gov"), "visit ");
        assert_eq!(strip_urls("HTTPS://T.CO/X é"), " é");
    }
}
