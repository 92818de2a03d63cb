/**
 * Reader for particle snapshots: one header line
 * "count delta a0 time" followed by "r z zeta mu" per particle.
 */

export interface Snapshot {
  count: number;
  delta: number;
  a0: number;
  time: number;
  r: number[];
  z: number[];
  zeta: number[];
  mu: number[];
}

export class SnapshotError extends Error {}

export function parseSnapshot(text: string): Snapshot {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) throw new SnapshotError("snapshot file is empty");
  const head = lines[0].split(/\s+/).map(Number);
  if (head.length !== 4 || head.some((v) => Number.isNaN(v))) {
    throw new SnapshotError(`malformed snapshot header "${lines[0]}"`);
  }
  const [count, delta, a0, time] = head;
  if (lines.length - 1 !== count) {
    throw new SnapshotError(
      `snapshot declares ${count} particles, file holds ${lines.length - 1}`
    );
  }
  const snap: Snapshot = { count, delta, a0, time, r: [], z: [], zeta: [], mu: [] };
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(/\s+/).map(Number);
    if (cells.length !== 4 || cells.some((v) => Number.isNaN(v))) {
      throw new SnapshotError(`snapshot line ${i}: expected "r z zeta mu"`);
    }
    snap.r.push(cells[0]);
    snap.z.push(cells[1]);
    snap.zeta.push(cells[2]);
    snap.mu.push(cells[3]);
  }
  return snap;
}
