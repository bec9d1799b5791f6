import { describe, expect, it } from "vitest";

import {
  attributeColumns,
  attributeValue,
  canSubmit,
  compareValues,
  encodeLabels,
  encodePairAnswers,
  labelColor,
  partitionOf,
  remainingLabels,
  remainingPairs,
  submitCaption,
} from "../src/gating.js";

describe("submit gating", () => {
  it("counts unanswered pairs", () => {
    expect(remainingPairs([null, null])).toBe(2);
    expect(remainingPairs([true, null])).toBe(1);
    expect(remainingPairs([true, false])).toBe(0);
  });

  it("counts unlabeled records", () => {
    const labels = new Map<string, number | null>([
      ["r1", 1],
      ["r2", null],
    ]);
    expect(remainingLabels(labels)).toBe(1);
    labels.set("r2", 2);
    expect(remainingLabels(labels)).toBe(0);
  });

  it("captions the button with the remaining count", () => {
    expect(submitCaption(0)).toBe("Submit");
    expect(submitCaption(1)).toBe("Submit (1 left)");
    expect(submitCaption(3)).toBe("Submit (3 left)");
  });

  it("only allows submit at zero remaining", () => {
    expect(canSubmit(0)).toBe(true);
    expect(canSubmit(1)).toBe(false);
  });
});

describe("answer encoding", () => {
  const pair = (a: string, b: string) => ({
    a: { id: a, attributes: [] as [string, string][] },
    b: { id: b, attributes: [] as [string, string][] },
  });

  it("encodes pair answers in payload order", () => {
    const rows = encodePairAnswers([pair("a", "b"), pair("c", "d")], [true, false]);
    expect(rows).toEqual([
      ["a", "b", true],
      ["c", "d", false],
    ]);
  });

  it("refuses to encode unanswered pairs", () => {
    expect(() => encodePairAnswers([pair("a", "b")], [null])).toThrow(/unanswered/);
  });

  it("encodes labels and refuses unlabeled records", () => {
    const labels = new Map<string, number | null>([
      ["r1", 1],
      ["r2", 1],
    ]);
    expect(encodeLabels(labels)).toEqual({ r1: 1, r2: 1 });
    labels.set("r3", null);
    expect(() => encodeLabels(labels)).toThrow(/r3/);
  });

  it("derives the entity partition from labels", () => {
    expect(partitionOf({ r1: 1, r2: 1, r7: 1, r3: 2 })).toEqual([
      ["r1", "r2", "r7"],
      ["r3"],
    ]);
  });
});

describe("presentation helpers", () => {
  it("assigns equal colors to equal labels only", () => {
    expect(labelColor(1)).toBe(labelColor(1));
    expect(labelColor(1)).not.toBe(labelColor(2));
  });

  it("compares numeric strings by value", () => {
    expect(compareValues("9", "10")).toBeLessThan(0);
    expect(compareValues("$490", "$49")).toBeGreaterThan(0);
    expect(compareValues("apple", "banana")).toBeLessThan(0);
  });

  it("collects attribute columns in first-seen order", () => {
    const records = [
      { attributes: [["name", "x"], ["price", "1"]] as [string, string][] },
      { attributes: [["name", "y"], ["color", "red"]] as [string, string][] },
    ];
    expect(attributeColumns(records)).toEqual(["name", "price", "color"]);
    expect(attributeValue(records[1]!, "price")).toBe("");
  });
});
