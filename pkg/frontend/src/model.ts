// Pure view logic.  Everything here is a function of the session data and
// the user's selections, so rendering after a refresh reproduces the very
// same view; nothing in this module talks to the service.

import type { Binding, Span } from "./schema";

/** Which output variables the user keeps in the slicing criterion. */
export type Kept = ReadonlySet<string>;

export function toggleName(kept: Kept, name: string): Set<string> {
  const next = new Set(kept);
  if (next.has(name)) {
    next.delete(name);
  } else {
    next.add(name);
  }
  return next;
}

/**
 * The criterion sent to the service: kept variables demand exactly the
 * value the run produced (criterion values are read-only), everything
 * else is a hole.  The domain always equals the output state's domain.
 */
export function criterionBindings(output: Binding[], kept: Kept): Binding[] {
  return output.map(({ name, value }) => ({
    name,
    value: kept.has(name) ? value : null,
  }));
}

export interface Segment {
  text: string;
  dimmed: boolean;
}

/**
 * Partition the canonical program text into kept and dimmed segments.
 * Spans come from the service ordered and non-overlapping; the segments
 * concatenate back to the full text, so dimming never loses characters.
 */
export function dimSegments(program: string, holes: Span[]): Segment[] {
  const segments: Segment[] = [];
  let cursor = 0;
  for (const { start, end } of holes) {
    if (start > cursor) {
      segments.push({ text: program.slice(cursor, start), dimmed: false });
    }
    segments.push({ text: program.slice(start, end), dimmed: true });
    cursor = end;
  }
  if (cursor < program.length) {
    segments.push({ text: program.slice(cursor), dimmed: false });
  }
  return segments;
}

export interface StateRow {
  name: string;
  display: string; // the value, or "_" for a hole
}

export function stateRows(bindings: Binding[]): StateRow[] {
  return bindings.map(({ name, value }) => ({
    name,
    display: value === null ? "_" : String(value),
  }));
}

/**
 * Top-level statement spans of a canonical program: split at `;` tokens
 * that sit outside every brace.  Purely textual, which is safe because
 * the text is the service's own canonical rendering.
 */
export function statementSpans(program: string): Span[] {
  const spans: Span[] = [];
  let depth = 0;
  let start = 0;
  for (let i = 0; i < program.length; i++) {
    const ch = program[i];
    if (ch === "{") depth++;
    else if (ch === "}") depth--;
    else if (ch === ";" && depth === 0) {
      spans.push(trimmed(program, start, i));
      start = i + 1;
    }
  }
  spans.push(trimmed(program, start, program.length));
  return spans;
}

function trimmed(text: string, start: number, end: number): Span {
  while (start < end && text[start] === " ") start++;
  while (end > start && text[end - 1] === " ") end--;
  return { start, end };
}

/** Rebuild a partial program, erased statements replaced by holes. */
export function forwardProgram(
  program: string,
  statements: Span[],
  erased: ReadonlySet<number>,
): string {
  return statements
    .map(({ start, end }, index) =>
      erased.has(index) ? "_" : program.slice(start, end),
    )
    .join(" ; ");
}

/** The partial input state for forward mode: erased entries become holes. */
export function forwardState(
  input: Binding[],
  erased: ReadonlySet<string>,
): Binding[] {
  return input.map(({ name, value }) => ({
    name,
    value: erased.has(name) ? null : value,
  }));
}
