//! Bible translations: verse identity, TSV ingestion and coverage.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// USFM book codes in canonical order.
pub const BOOK_CODES: [&str; 66] = [
    "GEN", "EXO", "LEV", "NUM", "DEU", "JOS", "JDG", "RUT", "1SA", "2SA", "1KI", "2KI", "1CH",
    "2CH", "EZR", "NEH", "EST", "JOB", "PSA", "PRO", "ECC", "SNG", "ISA", "JER", "LAM", "EZK",
    "DAN", "HOS", "JOL", "AMO", "OBA", "JON", "MIC", "NAM", "HAB", "ZEP", "HAG", "ZEC", "MAL",
    "MAT", "MRK", "LUK", "JHN", "ACT", "ROM", "1CO", "2CO", "GAL", "EPH", "PHP", "COL", "1TH",
    "2TH", "1TI", "2TI", "TIT", "PHM", "HEB", "JAS", "1PE", "2PE", "1JN", "2JN", "3JN", "JUD",
    "REV",
];

/// Index of the first New Testament book (MAT) in [`BOOK_CODES`].
const FIRST_NT_BOOK: u8 = 39;

/// Default coverage threshold for accepting a translation.
pub const DEFAULT_MIN_OVERLAP: usize = 500;

const BUILTIN_BOOK_CODES: &str = include_str!("../data/book_codes.tsv");

/// A canonical book, ordered by canonical position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Book(u8);

impl Book {
    /// Looks up a canonical code (case-insensitive). Aliases need [`BookCodes`].
    pub fn from_code(code: &str) -> Option<Book> {
        let code = code.to_ascii_uppercase();
        BOOK_CODES
            .iter()
            .position(|c| *c == code)
            .map(|i| Book(i as u8))
    }

    pub fn code(self) -> &'static str {
        BOOK_CODES[self.0 as usize]
    }

    pub fn is_new_testament(self) -> bool {
        self.0 >= FIRST_NT_BOOK
    }
}

impl fmt::Display for Book {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Alias table mapping book names and abbreviations to canonical books.
#[derive(Debug, Clone)]
pub struct BookCodes {
    aliases: HashMap<String, Book>,
}

impl Default for BookCodes {
    fn default() -> Self {
        Self::builtin()
    }
}

impl BookCodes {
    /// The mapping shipped in `data/book_codes.tsv`.
    pub fn builtin() -> Self {
        Self::from_tsv(BUILTIN_BOOK_CODES).expect("shipped book code table is valid")
    }

    /// Reads a two-column `alias<TAB>canonical` table. Canonical codes always
    /// resolve to themselves.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut aliases = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Ingest {
                line: i + 1,
                message,
            };
            let (alias, canon) = line
                .split_once('\t')
                .ok_or_else(|| err("book code line needs two tab-separated columns".into()))?;
            let book = Book::from_code(canon.trim())
                .ok_or_else(|| err(format!("{canon:?} is not a canonical book code")))?;
            aliases.insert(alias.trim().to_uppercase(), book);
        }
        Ok(BookCodes { aliases })
    }

    pub fn resolve(&self, name: &str) -> Option<Book> {
        Book::from_code(name.trim())
            .or_else(|| self.aliases.get(&name.trim().to_uppercase()).copied())
    }

    /// Builds a label from the three TSV fields (`"ACT"`, `"1"`, `"16-17"`).
    pub fn verse_label(&self, book: &str, chapter: &str, verse_field: &str) -> Result<VerseLabel> {
        let bad = |message: String| Error::VerseLabel {
            input: format!("{book} {chapter}:{verse_field}"),
            message,
        };
        let book = self
            .resolve(book)
            .ok_or_else(|| bad(format!("unknown book code {book:?}")))?;
        let chapter = parse_positive(chapter).map_err(|m| bad(format!("chapter {m}")))?;
        let (lo, hi) = match verse_field.trim().split_once('-') {
            None => {
                let v = parse_positive(verse_field).map_err(|m| bad(format!("verse {m}")))?;
                (v, v)
            }
            Some((a, b)) => {
                let lo = parse_positive(a).map_err(|m| bad(format!("verse {m}")))?;
                let hi = parse_positive(b).map_err(|m| bad(format!("verse {m}")))?;
                if hi <= lo {
                    return Err(bad("combined range must end after it starts".into()));
                }
                (lo, hi)
            }
        };
        Ok(VerseLabel {
            book,
            chapter,
            verse_lo: lo,
            verse_hi: hi,
        })
    }

    /// Parses `"BOOK C:V"` or `"BOOK C:V1-V2"`; the book may be an alias.
    pub fn parse_label(&self, s: &str) -> Result<VerseLabel> {
        let bad = |message: &str| Error::VerseLabel {
            input: s.to_string(),
            message: message.to_string(),
        };
        let s = s.trim();
        let (book, cv) = s
            .rsplit_once(char::is_whitespace)
            .ok_or_else(|| bad("expected BOOK C:V"))?;
        let (c, v) = cv.split_once(':').ok_or_else(|| bad("expected BOOK C:V"))?;
        self.verse_label(book, c, v)
    }
}

fn parse_positive(s: &str) -> std::result::Result<u32, String> {
    let s = s.trim();
    match s.parse::<i64>() {
        Ok(n) if n >= 1 && n <= i64::from(u32::MAX) => Ok(n as u32),
        Ok(n) => Err(format!("{n} must be at least 1")),
        Err(_) => Err(format!("{s:?} is not an integer")),
    }
}

/// Book, chapter and a verse or a combined verse range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VerseLabel {
    pub book: Book,
    pub chapter: u32,
    pub verse_lo: u32,
    pub verse_hi: u32,
}

impl VerseLabel {
    pub fn simple(book: Book, chapter: u32, verse: u32) -> Self {
        VerseLabel {
            book,
            chapter,
            verse_lo: verse,
            verse_hi: verse,
        }
    }

    pub fn is_combined(&self) -> bool {
        self.verse_hi > self.verse_lo
    }

    pub fn contains(&self, book: Book, chapter: u32, verse: u32) -> bool {
        self.book == book
            && self.chapter == chapter
            && (self.verse_lo..=self.verse_hi).contains(&verse)
    }

    /// The simple labels this label covers.
    pub fn verses(&self) -> impl Iterator<Item = VerseLabel> + '_ {
        (self.verse_lo..=self.verse_hi).map(|v| VerseLabel::simple(self.book, self.chapter, v))
    }

    /// The verse field as written in TSV files (`35`, `16-17`).
    pub fn verse_field(&self) -> String {
        if self.is_combined() {
            format!("{}-{}", self.verse_lo, self.verse_hi)
        } else {
            self.verse_lo.to_string()
        }
    }
}

impl fmt::Display for VerseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}:{}", self.book, self.chapter, self.verse_field())
    }
}

impl FromStr for VerseLabel {
    type Err = Error;

    /// Canonical codes only; use [`BookCodes::parse_label`] for aliases.
    fn from_str(s: &str) -> Result<Self> {
        let label = BookCodes {
            aliases: HashMap::new(),
        }
        .parse_label(s)?;
        Ok(label)
    }
}

impl Serialize for VerseLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VerseLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Builds a label with the built-in book table.
pub fn parse_verse_label(book: &str, chapter: &str, verse_field: &str) -> Result<VerseLabel> {
    BookCodes::builtin().verse_label(book, chapter, verse_field)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerseText {
    pub label: VerseLabel,
    pub text: String,
}

/// One translation, in file order, indexed by integer verse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bible {
    pub translation_id: String,
    pub verses: Vec<VerseText>,
    index: BTreeMap<(Book, u32, u32), usize>,
    /// Lines dropped because their text field was empty.
    pub skipped_empty: usize,
}

impl Bible {
    /// Builds a Bible from already-parsed verses, rejecting overlaps.
    pub fn from_verses(translation_id: &str, verses: Vec<VerseText>) -> Result<Self> {
        let mut bible = Bible {
            translation_id: translation_id.to_string(),
            verses: Vec::with_capacity(verses.len()),
            index: BTreeMap::new(),
            skipped_empty: 0,
        };
        for (i, v) in verses.into_iter().enumerate() {
            bible.push(v, i + 1, |pos| pos + 1)?;
        }
        Ok(bible)
    }

    fn push(
        &mut self,
        verse: VerseText,
        line: usize,
        line_of: impl Fn(usize) -> usize,
    ) -> Result<()> {
        let pos = self.verses.len();
        for key in verse.label.verses() {
            if let Some(&other) = self.index.get(&(key.book, key.chapter, key.verse_lo)) {
                return Err(Error::Ingest {
                    line,
                    message: format!(
                        "{} overlaps {} from line {}",
                        verse.label,
                        self.verses[other].label,
                        line_of(other)
                    ),
                });
            }
        }
        for key in verse.label.verses() {
            self.index
                .insert((key.book, key.chapter, key.verse_lo), pos);
        }
        self.verses.push(verse);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.verses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verses.is_empty()
    }

    /// Number of integer verses covered (combined verses count each member).
    pub fn index_len(&self) -> usize {
        self.index.len()
    }

    /// Position of the verse covering `book chapter:verse`.
    pub fn position(&self, book: Book, chapter: u32, verse: u32) -> Option<usize> {
        self.index.get(&(book, chapter, verse)).copied()
    }

    /// Verse covering the given simple label, which may itself be combined.
    pub fn covering(&self, label: &VerseLabel) -> Option<&VerseText> {
        self.position(label.book, label.chapter, label.verse_lo)
            .map(|p| &self.verses[p])
    }

    /// Renders the Bible as TSV in its original verse order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for v in &self.verses {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                v.label.book,
                v.label.chapter,
                v.label.verse_field(),
                v.text
            ));
        }
        out
    }
}

/// Parses a `book<TAB>chapter<TAB>verse<TAB>text` file.
///
/// `#` lines are comments. A first data line with a non-integer chapter
/// field is taken as a header. Lines with empty text are skipped and counted
/// in [`Bible::skipped_empty`].
pub fn parse_bible_tsv(text: &str, translation_id: &str, books: &BookCodes) -> Result<Bible> {
    let mut bible = Bible {
        translation_id: translation_id.to_string(),
        verses: Vec::new(),
        index: BTreeMap::new(),
        skipped_empty: 0,
    };
    let mut lines_of: Vec<usize> = Vec::new();
    let mut seen_data = false;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Ingest {
            line: lineno,
            message,
        };
        let fields: Vec<&str> = line.splitn(4, '\t').collect();
        if fields.len() < 3 {
            return Err(err(format!(
                "expected 4 tab-separated fields, found {}",
                fields.len()
            )));
        }
        let first = !seen_data;
        seen_data = true;
        if fields[1].trim().parse::<i64>().is_err() {
            if first {
                continue;
            }
            return Err(err(format!("chapter {:?} is not an integer", fields[1])));
        }
        let text = fields.get(3).map_or("", |t| t.trim());
        if text.is_empty() {
            bible.skipped_empty += 1;
            continue;
        }
        let label = books
            .verse_label(fields[0], fields[1], fields[2])
            .map_err(|e| err(e.to_string()))?;
        bible.push(
            VerseText {
                label,
                text: text.to_string(),
            },
            lineno,
            |pos| lines_of[pos],
        )?;
        lines_of.push(lineno);
    }
    Ok(bible)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub overlap: usize,
    pub accepted: bool,
}

/// Counts reference verses that the Bible renders as simple verses.
/// Combined target verses never count.
pub fn coverage_check(
    bible: &Bible,
    reference: &BTreeSet<VerseLabel>,
    min_overlap: usize,
) -> Coverage {
    let overlap = reference
        .iter()
        .filter(|r| !r.is_combined())
        .filter(|r| bible.covering(r).is_some_and(|v| !v.label.is_combined()))
        .count();
    Coverage {
        overlap,
        accepted: overlap >= min_overlap,
    }
}
