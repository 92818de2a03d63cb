import { describe, expect, it } from "vitest";

import { CsvError, column, parseSeries } from "../src/csv.js";
import { parseSnapshot } from "../src/snapshots.js";

describe("parseSeries", () => {
  it("reads header and rows", () => {
    const table = parseSeries("t,p2,bigZ\n0,1.5,2\n0.1,1.6,1.9\n");
    expect(table.columns).toEqual(["t", "p2", "bigZ"]);
    expect(table.nRows).toBe(2);
    expect(column(table, "p2")).toEqual([1.5, 1.6]);
  });

  it("treats nan cells as gaps", () => {
    const table = parseSeries("t,dZ_axis\n0,nan\n1,-0.5\n");
    const col = column(table, "dZ_axis");
    expect(Number.isNaN(col[0])).toBe(true);
    expect(col[1]).toBe(-0.5);
  });

  it("names the offending row on malformed input", () => {
    expect(() => parseSeries("t,p2\n0,1\n0.1\n")).toThrow(/row 2/);
    expect(() => parseSeries("t,p2\n0,abc\n")).toThrow(/row 1/);
  });

  it("rejects unknown columns on lookup", () => {
    const table = parseSeries("t,p2\n0,1\n");
    expect(() => column(table, "p9")).toThrow(CsvError);
  });
});

describe("parseSnapshot", () => {
  it("reads the header and particle lines", () => {
    const snap = parseSnapshot("2 0.05 1.0 2.5\n1.0 0.5 1.0 0.01\n1.1 0.6 0.9 0.02\n");
    expect(snap.count).toBe(2);
    expect(snap.time).toBe(2.5);
    expect(snap.r).toEqual([1.0, 1.1]);
  });

  it("rejects count mismatches", () => {
    expect(() => parseSnapshot("3 0.05 1 0\n1 1 1 1\n")).toThrow(/declares 3/);
  });
});
