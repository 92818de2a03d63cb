/**
 * Reader for the simulator's series.csv: a header row of column names
 * followed by one row of full-precision decimals per diagnostics record.
 * "nan" cells (skipped heavy diagnostics) parse to NaN.
 */

export interface SeriesTable {
  columns: string[];
  /** column name -> values, one per record, in file order */
  data: Map<string, number[]>;
  nRows: number;
}

export class CsvError extends Error {}

export function parseSeries(text: string): SeriesTable {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) throw new CsvError("series file is empty");
  const columns = lines[0].split(",").map((c) => c.trim());
  if (columns[0] !== "t") {
    throw new CsvError(`series header must start with "t", got "${columns[0]}"`);
  }
  const data = new Map<string, number[]>(columns.map((c) => [c, []]));
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== columns.length) {
      throw new CsvError(
        `row ${i}: expected ${columns.length} cells, found ${cells.length}`
      );
    }
    for (let j = 0; j < cells.length; j++) {
      const cell = cells[j].trim();
      const v = cell === "nan" || cell === "-nan" ? NaN : Number(cell);
      if (Number.isNaN(v) && cell !== "nan" && cell !== "-nan") {
        throw new CsvError(`row ${i}: cell "${cell}" in column ${columns[j]} is not a number`);
      }
      data.get(columns[j])!.push(v);
    }
  }
  return { columns, data, nRows: lines.length - 1 };
}

export function column(table: SeriesTable, name: string): number[] {
  const col = table.data.get(name);
  if (!col) {
    throw new CsvError(`column "${name}" not present (have: ${table.columns.join(", ")})`);
  }
  return col;
}

/** Column names matching a prefix, e.g. mR_* or int_mR4_*. */
export function columnsWithPrefix(table: SeriesTable, prefix: string): string[] {
  return table.columns.filter((c) => c.startsWith(prefix));
}
