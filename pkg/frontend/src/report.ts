#!/usr/bin/env node
/**
 * report - figure generation from simulator outputs.
 *
 * Usage:
 *   report --series PATH --snaps GLOB --out DIR [--figures LIST]
 *
 * --figures is a comma list drawn from moments,fits,frames,escape
 * (default: all four).  Emits one SVG per figure plus index.html, and
 * prints the fitted growth exponents.  Inputs are never modified and the
 * output depends only on the input bytes.
 */

import { readFile, readdir, writeFile, mkdir } from "fs/promises";
import path from "path";

import { parseSeries } from "./csv.js";
import { makeEscape, makeFits, makeFrames, makeMoments, FigureResult } from "./figures.js";
import { parseSnapshot, Snapshot } from "./snapshots.js";
import { esc } from "./svg.js";

const FIGURE_NAMES = ["moments", "fits", "frames", "escape"] as const;
type FigureName = (typeof FIGURE_NAMES)[number];

interface Args {
  series: string;
  snaps?: string;
  out: string;
  figures: FigureName[];
}

export function parseArgs(argv: string[]): Args {
  const get = (flag: string): string | undefined => {
    const i = argv.indexOf(flag);
    return i >= 0 && i + 1 < argv.length ? argv[i + 1] : undefined;
  };
  const series = get("--series");
  const out = get("--out");
  if (!series || !out) {
    throw new Error("usage: report --series PATH --snaps GLOB --out DIR [--figures LIST]");
  }
  const figuresRaw = get("--figures") ?? FIGURE_NAMES.join(",");
  const figures = figuresRaw.split(",").map((f) => f.trim()) as FigureName[];
  for (const f of figures) {
    if (!FIGURE_NAMES.includes(f)) {
      throw new Error(`unknown figure "${f}"; expected ${FIGURE_NAMES.join("|")}`);
    }
  }
  return { series, snaps: get("--snaps"), out, figures };
}

/** Expand a shell-style glob (* and ? in the basename only). */
export async function expandGlob(pattern: string): Promise<string[]> {
  const dir = path.dirname(pattern);
  const base = path.basename(pattern);
  const rx = new RegExp(
    "^" + base.replace(/[.+^${}()|[\]\\]/g, "\\$&").replace(/\*/g, ".*").replace(/\?/g, ".") + "$"
  );
  let names: string[];
  try {
    names = await readdir(dir);
  } catch {
    return [];
  }
  return names.filter((n) => rx.test(n)).sort().map((n) => path.join(dir, n));
}

function indexPage(figures: Map<string, FigureResult>, seriesPath: string, nRows: number): string {
  let body = `<h1>simulation report</h1>\n<p>series: <code>${esc(seriesPath)}</code> (${nRows} records)</p>\n`;
  for (const [name, fig] of figures) {
    body += `<h2>${name}</h2>\n`;
    for (const note of fig.notes) body += `<p><code>${esc(note)}</code></p>\n`;
    body += `<p><img src="${name}.svg" style="max-width:100%"/></p>\n`;
  }
  return `<!doctype html>\n<html><head><meta charset="utf-8"><title>simulation report</title></head>\n<body style="font-family:sans-serif;max-width:1000px;margin:auto">\n${body}</body></html>\n`;
}

export async function makeReport(args: Args): Promise<string[]> {
  const table = parseSeries(await readFile(args.series, "utf-8"));
  let snapshots: Snapshot[] = [];
  if (args.snaps) {
    const paths = await expandGlob(args.snaps);
    snapshots = await Promise.all(
      paths.map(async (p) => parseSnapshot(await readFile(p, "utf-8")))
    );
  }

  const figures = new Map<string, FigureResult>();
  const notes: string[] = [];
  for (const name of args.figures) {
    let fig: FigureResult | null = null;
    if (name === "moments") fig = makeMoments(table);
    else if (name === "fits") {
      fig = makeFits(table);
      if (!fig) {
        notes.push("fits: skipped, fewer than five positive-time records");
        continue;
      }
    } else if (name === "frames") {
      if (snapshots.length === 0) {
        notes.push("frames: skipped, no snapshots matched --snaps");
        continue;
      }
      fig = makeFrames(snapshots);
    } else if (name === "escape") fig = makeEscape(table);
    if (fig) figures.set(name, fig);
  }

  await mkdir(args.out, { recursive: true });
  const written: string[] = [];
  for (const [name, fig] of figures) {
    const file = path.join(args.out, `${name}.svg`);
    await writeFile(file, fig.svg);
    written.push(file);
    notes.push(...fig.notes);
  }
  const index = path.join(args.out, "index.html");
  await writeFile(index, indexPage(figures, args.series, table.nRows));
  written.push(index);
  for (const note of notes) console.log(note);
  return written;
}

const isMain =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${path.resolve(process.argv[1])}`).href;

if (isMain) {
  Promise.resolve()
    .then(() => makeReport(parseArgs(process.argv.slice(2))))
    .then((files) => {
      console.log(`wrote ${files.length} file(s) to ${path.dirname(files[0])}`);
    })
    .catch((err) => {
      console.error(`report error: ${(err as Error).message}`);
      process.exit(1);
    });
}
