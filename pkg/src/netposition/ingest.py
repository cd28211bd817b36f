"""Turn forum-post logs into an interaction network and member attributes.

A post log is a CSV with header ``thread_id,author,timestamp[,body][,has_code]``.
Edges between members are derived per an InteractionPolicy: either
consecutive posts in a thread link their authors (reply-chain) or every
pair of authors sharing a thread is linked (co-thread clique projection).
A member's contribution is the count of their posts that carry code,
detected by rule or taken from the has_code column.
"""
from __future__ import annotations

import csv
import logging
import re
from dataclasses import dataclass
from datetime import datetime, timezone

from .graph import Graph, build_graph

logger = logging.getLogger(__name__)

POLICY_MODES = ("reply-chain", "co-thread")

_TRUE_WORDS = {"true", "1", "yes"}
_FALSE_WORDS = {"false", "0", "no"}


@dataclass(frozen=True)
class ForumPost:
    thread_id: str
    author: str
    timestamp: datetime
    body: str | None = None
    has_code: bool | None = None


@dataclass(frozen=True)
class NodeAttributes:
    """Per-member contribution count plus the two regression controls."""
    contribution: int = 0
    tenure_days: float = 0.0
    profession: str = "unknown"


@dataclass(frozen=True)
class InteractionPolicy:
    """How thread co-participation becomes edges.

    mode "reply-chain" links authors of consecutive posts in a thread;
    "co-thread" links every pair of distinct authors in a thread, limited
    to posts at most `window` positions apart when a window is set.
    """
    mode: str = "reply-chain"
    window: int | None = None

    def __post_init__(self):
        if self.mode not in POLICY_MODES:
            raise ValueError(f"policy mode must be one of {POLICY_MODES}, got {self.mode!r}")
        if self.window is not None and self.window < 1:
            raise ValueError(f"co-thread window must be >= 1, got {self.window}")


@dataclass(frozen=True)
class CodeDetection:
    """Rules for spotting code in a post body.

    A body counts as code if it has a fenced ``` block, an HTML <code> or
    <pre> span, or at least `min_lines` consecutive lines matching
    `line_pattern` (by default: ending in ';', '{' or '}').
    """
    min_lines: int = 3
    line_pattern: str = r"[;{}]\s*$"

    def __post_init__(self):
        if self.min_lines < 1:
            raise ValueError(f"min_lines must be >= 1, got {self.min_lines}")


_HTML_CODE_RE = re.compile(r"<(code|pre)[\s>]", re.IGNORECASE)


def detect_code(body: str, config: CodeDetection = CodeDetection()) -> bool:
    """True iff the body looks like it contains a chunk of code."""
    if body.count("```") >= 2:
        return True
    if _HTML_CODE_RE.search(body):
        return True
    pattern = re.compile(config.line_pattern)
    streak = 0
    for line in body.splitlines():
        if pattern.search(line):
            streak += 1
            if streak >= config.min_lines:
                return True
        else:
            streak = 0
    return False


def _parse_timestamp(raw: str, lineno: int) -> datetime:
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        ts = datetime.fromisoformat(text)
    except ValueError:
        raise ValueError(f"line {lineno}: unparsable timestamp {raw!r}") from None
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _parse_bool(raw: str, lineno: int) -> bool | None:
    word = raw.strip().lower()
    if not word:
        return None
    if word in _TRUE_WORDS:
        return True
    if word in _FALSE_WORDS:
        return False
    raise ValueError(f"line {lineno}: has_code must be true/false, got {raw!r}")


def parse_posts(path) -> list[ForumPost]:
    """Read a posts CSV, in file order.

    Mandatory columns: thread_id, author, timestamp; optional: body,
    has_code. A row missing a mandatory field, or missing both body and
    has_code, is an error naming the line.
    """
    posts: list[ForumPost] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: missing header")
        cols = [c.strip() for c in reader.fieldnames]
        missing = {"thread_id", "author", "timestamp"} - set(cols)
        if missing:
            raise ValueError(f"{path}: header lacks required column(s) {sorted(missing)}")
        for row in reader:
            lineno = reader.line_num
            thread_id = (row.get("thread_id") or "").strip()
            author = (row.get("author") or "").strip()
            if not thread_id:
                raise ValueError(f"line {lineno}: empty thread_id")
            if not author:
                raise ValueError(f"line {lineno}: empty author")
            ts = _parse_timestamp(row.get("timestamp") or "", lineno)
            body = row.get("body")
            body = body if body else None
            has_code = _parse_bool(row.get("has_code") or "", lineno)
            if body is None and has_code is None:
                raise ValueError(f"line {lineno}: need body or has_code")
            posts.append(ForumPost(thread_id, author, ts, body, has_code))
    return posts


def _threads(posts: list[ForumPost]) -> dict[str, list[ForumPost]]:
    """Posts grouped by thread, ordered by (timestamp, input position)."""
    by_thread: dict[str, list[tuple]] = {}
    for i, post in enumerate(posts):
        by_thread.setdefault(post.thread_id, []).append((post.timestamp, i, post))
    return {tid: [p for _, _, p in sorted(rows, key=lambda r: (r[0], r[1]))]
            for tid, rows in by_thread.items()}


def build_interaction_network(
    posts: list[ForumPost],
    policy: InteractionPolicy = InteractionPolicy(),
) -> tuple[Graph, dict[tuple[str, str], int]]:
    """Derive the member graph plus co-occurrence edge weights.

    Every distinct author becomes a node, even when no rule fires for them
    (single-author threads). Weights count how often the linking rule fired
    for a pair; they are emitted for downstream use but nothing in this
    package consumes them.
    """
    if not posts:
        raise ValueError("no posts to build a network from")
    weights: dict[tuple[str, str], int] = {}

    def link(a: str, b: str) -> None:
        if a == b:
            return
        key = (a, b) if a < b else (b, a)
        weights[key] = weights.get(key, 0) + 1

    for thread in _threads(posts).values():
        authors = [p.author for p in thread]
        if policy.mode == "reply-chain":
            for prev, cur in zip(authors, authors[1:]):
                link(prev, cur)
        else:
            for i in range(len(authors)):
                stop = len(authors) if policy.window is None else min(
                    len(authors), i + policy.window + 1)
                for j in range(i + 1, stop):
                    link(authors[i], authors[j])

    all_authors = {p.author for p in posts}
    g = build_graph(list(weights), extra_nodes=all_authors)
    return g, weights


def compute_attributes(
    posts: list[ForumPost],
    config: CodeDetection = CodeDetection(),
    member_attrs_path=None,
) -> dict[str, NodeAttributes]:
    """Contribution, tenure and profession for every posting member.

    Contribution counts posts whose has_code is true, or whose body passes
    `detect_code` when has_code is absent. Tenure is days from a member's
    first post to the newest timestamp in the corpus, unless the optional
    side CSV (``member,profession[,tenure_days]``) supplies an explicit
    override. Professions default to "unknown".
    """
    if not posts:
        raise ValueError("no posts to compute attributes from")
    contribution: dict[str, int] = {}
    first_post: dict[str, datetime] = {}
    corpus_end = max(p.timestamp for p in posts)
    for post in posts:
        author = post.author
        contribution.setdefault(author, 0)
        has_code = post.has_code
        if has_code is None:
            has_code = bool(post.body) and detect_code(post.body, config)
        if has_code:
            contribution[author] += 1
        if author not in first_post or post.timestamp < first_post[author]:
            first_post[author] = post.timestamp

    professions, tenure_override = ({}, {})
    if member_attrs_path is not None:
        professions, tenure_override = read_member_attrs_csv(member_attrs_path)
        for member in professions.keys() | tenure_override.keys():
            if member not in contribution:
                logger.warning("attribute file names unknown member %r; ignored", member)

    attrs: dict[str, NodeAttributes] = {}
    for author in contribution:
        tenure = tenure_override.get(author)
        if tenure is None:
            tenure = (corpus_end - first_post[author]).total_seconds() / 86400.0
        attrs[author] = NodeAttributes(
            contribution=contribution[author],
            tenure_days=tenure,
            profession=professions.get(author, "unknown"),
        )
    return attrs


def read_member_attrs_csv(path) -> tuple[dict[str, str], dict[str, float]]:
    """Side CSV ``member,profession[,tenure_days]`` -> (professions, tenure)."""
    professions: dict[str, str] = {}
    tenure: dict[str, float] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or "member" not in reader.fieldnames:
            raise ValueError(f"{path}: expected header with 'member' column")
        for row in reader:
            member = (row.get("member") or "").strip()
            if not member:
                raise ValueError(f"{path}: line {reader.line_num}: empty member")
            prof = (row.get("profession") or "").strip()
            if prof:
                professions[member] = prof
            raw_tenure = (row.get("tenure_days") or "").strip()
            if raw_tenure:
                value = float(raw_tenure)
                if value < 0:
                    raise ValueError(f"{path}: line {reader.line_num}: negative tenure")
                tenure[member] = value
    return professions, tenure


def write_attrs_csv(path, attrs: dict[str, NodeAttributes]) -> None:
    """Write ``member,contribution,tenure_days,profession`` sorted by member."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["member", "contribution", "tenure_days", "profession"])
        for member in sorted(attrs):
            a = attrs[member]
            writer.writerow([member, a.contribution, "%.12g" % a.tenure_days, a.profession])


def read_attrs_csv(path) -> dict[str, NodeAttributes]:
    """Read the attributes CSV written by `write_attrs_csv`."""
    attrs: dict[str, NodeAttributes] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"member", "contribution", "tenure_days", "profession"}
        if reader.fieldnames is None or not required <= set(reader.fieldnames):
            raise ValueError(f"{path}: expected header {sorted(required)}")
        for row in reader:
            member = row["member"]
            if not member:
                raise ValueError(f"{path}: line {reader.line_num}: empty member")
            attrs[member] = NodeAttributes(
                contribution=int(row["contribution"]),
                tenure_days=float(row["tenure_days"]),
                profession=row["profession"] or "unknown",
            )
    return attrs
