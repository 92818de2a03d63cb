import { mkdtemp, readFile, writeFile, mkdir, readdir } from "fs/promises";
import { tmpdir } from "os";
import path from "path";

import { describe, expect, it } from "vitest";

import { expandGlob, makeReport, parseArgs } from "../src/report.js";

const FIXTURE = path.join(__dirname, "fixtures", "mini_run");

async function tmp(): Promise<string> {
  return mkdtemp(path.join(tmpdir(), "report-"));
}

describe("parseArgs", () => {
  it("requires series and out", () => {
    expect(() => parseArgs(["--series", "x"])).toThrow(/usage/);
  });

  it("validates figure names", () => {
    expect(() =>
      parseArgs(["--series", "s", "--out", "o", "--figures", "pie"])
    ).toThrow(/unknown figure/);
  });
});

describe("makeReport on real simulator output", () => {
  it("emits all four figure types and an index page", async () => {
    const out = await tmp();
    const written = await makeReport({
      series: path.join(FIXTURE, "series.csv"),
      snaps: path.join(FIXTURE, "snapshots", "snap_*.txt"),
      out,
      figures: ["moments", "fits", "frames", "escape"],
    });
    const names = (await readdir(out)).sort();
    expect(names).toEqual([
      "escape.svg", "fits.svg", "frames.svg", "index.html", "moments.svg",
    ]);
    for (const file of written.filter((f) => f.endsWith(".svg"))) {
      const body = await readFile(file, "utf-8");
      expect(body).toContain("<svg");
      expect(body).toContain("</svg>");
    }
    const index = await readFile(path.join(out, "index.html"), "utf-8");
    expect(index).toContain("moments.svg");
    expect(index).toContain("frames.svg");
  });

  it("is deterministic across reruns", async () => {
    const out1 = await tmp();
    const out2 = await tmp();
    const args = (out: string) => ({
      series: path.join(FIXTURE, "series.csv"),
      snaps: path.join(FIXTURE, "snapshots", "snap_*.txt"),
      out,
      figures: ["moments", "fits", "frames", "escape"] as any,
    });
    await makeReport(args(out1));
    await makeReport(args(out2));
    for (const name of ["moments.svg", "fits.svg", "frames.svg", "escape.svg"]) {
      const a = await readFile(path.join(out1, name), "utf-8");
      const b = await readFile(path.join(out2, name), "utf-8");
      expect(a).toBe(b);
    }
  });
});

describe("edge cases", () => {
  it("single-row series: moments carries one point, fits is skipped", async () => {
    const dir = await tmp();
    const series = path.join(dir, "series.csv");
    const header = (await readFile(path.join(FIXTURE, "series.csv"), "utf-8")).split("\n");
    await writeFile(series, header[0] + "\n" + header[1] + "\n");
    const out = path.join(dir, "out");
    await makeReport({ series, out, figures: ["moments", "fits"] as any });
    const names = (await readdir(out)).sort();
    expect(names).toEqual(["index.html", "moments.svg"]);
    const svg = await readFile(path.join(out, "moments.svg"), "utf-8");
    expect(svg).toContain("<circle"); // the single sample is a marker
  });

  it("synthetic 4/3 power law reproduces the reference slope in the notes", async () => {
    const dir = await tmp();
    const series = path.join(dir, "series.csv");
    let body = "t,p2,bigZ,omega_sup\n";
    for (let i = 0; i <= 100; i++) {
      const t = 0.5 + (19.5 * i) / 100;
      body += `${t},${3.0 * t ** (4 / 3)},${1 / t},${t ** 0.25}\n`;
    }
    await writeFile(series, body);
    const logs: string[] = [];
    const orig = console.log;
    console.log = (msg: string) => logs.push(String(msg));
    try {
      await makeReport({ series, out: path.join(dir, "out"), figures: ["fits"] as any });
    } finally {
      console.log = orig;
    }
    const fitLine = logs.find((l) => l.startsWith("fit p2"));
    expect(fitLine).toBeDefined();
    const slope = Number(/slope ([-\d.]+)/.exec(fitLine!)![1]);
    expect(Math.abs(slope - 4 / 3)).toBeLessThan(0.01);
  });

  it("malformed csv names the row", async () => {
    const dir = await tmp();
    const series = path.join(dir, "series.csv");
    await writeFile(series, "t,p2\n0,1\nbroken\n");
    await expect(
      makeReport({ series, out: path.join(dir, "out"), figures: ["moments"] as any })
    ).rejects.toThrow(/row 2/);
  });

  it("expandGlob matches snapshot names", async () => {
    const hits = await expandGlob(path.join(FIXTURE, "snapshots", "snap_*.txt"));
    expect(hits.length).toBe(3);
    expect(hits[0].endsWith("snap_000000.txt")).toBe(true);
  });
});
