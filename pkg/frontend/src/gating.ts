// Pure view logic: submit gating, answer encoding, colors, sorting.

import type { PairAnswerRow, PairItem } from "./types.js";

/** Choices for a pair task: index-aligned, null while unanswered. */
export type PairChoices = (boolean | null)[];

/** Labels for a cluster task: record id to label, null while unlabeled. */
export type LabelChoices = Map<string, number | null>;

export function remainingPairs(choices: PairChoices): number {
  return choices.filter((c) => c === null).length;
}

export function remainingLabels(choices: LabelChoices): number {
  let left = 0;
  for (const value of choices.values()) {
    if (value === null) left += 1;
  }
  return left;
}

export function submitCaption(remaining: number): string {
  return remaining === 0 ? "Submit" : `Submit (${remaining} left)`;
}

export function canSubmit(remaining: number): boolean {
  return remaining === 0;
}

export function encodePairAnswers(
  pairs: PairItem[],
  choices: PairChoices,
): PairAnswerRow[] {
  return pairs.map((pair, i) => {
    const choice = choices[i];
    if (choice === null || choice === undefined) {
      throw new Error(`pair ${i + 1} is unanswered`);
    }
    return [pair.a.id, pair.b.id, choice];
  });
}

export function encodeLabels(choices: LabelChoices): Record<string, number> {
  const out: Record<string, number> = {};
  for (const [id, label] of choices) {
    if (label === null) throw new Error(`record ${id} is unlabeled`);
    out[id] = label;
  }
  return out;
}

/** Group record ids by label: the entity partition the labels express. */
export function partitionOf(labels: Record<string, number>): string[][] {
  const groups = new Map<number, string[]>();
  for (const id of Object.keys(labels).sort()) {
    const label = labels[id];
    if (label === undefined) continue;
    const group = groups.get(label) ?? [];
    group.push(id);
    groups.set(label, group);
  }
  return [...groups.entries()].sort((x, y) => x[0] - y[0]).map(([, g]) => g);
}

const PALETTE = [
  "#ffd9a8",
  "#b5e3b5",
  "#aecbfa",
  "#f3b3c2",
  "#e2d5f8",
  "#c9ecf5",
  "#f5f0a9",
  "#dcc7b0",
  "#c5d6c1",
  "#e8c5e3",
];

export function labelColor(label: number): string {
  return PALETTE[(label - 1) % PALETTE.length] as string;
}

/** Numeric-aware comparison so a price column sorts by value, not text. */
export function compareValues(a: string, b: string): number {
  const na = Number(a.replace(/[^0-9.eE+-]/g, ""));
  const nb = Number(b.replace(/[^0-9.eE+-]/g, ""));
  if (a.trim() !== "" && b.trim() !== "" && Number.isFinite(na) && Number.isFinite(nb)) {
    return na - nb;
  }
  return a < b ? -1 : a > b ? 1 : 0;
}

/** Column names across all records, in first-seen order. */
export function attributeColumns(records: { attributes: [string, string][] }[]): string[] {
  const seen: string[] = [];
  for (const record of records) {
    for (const [name] of record.attributes) {
      if (!seen.includes(name)) seen.push(name);
    }
  }
  return seen;
}

export function attributeValue(
  record: { attributes: [string, string][] },
  column: string,
): string {
  for (const [name, value] of record.attributes) {
    if (name === column) return value;
  }
  return "";
}
