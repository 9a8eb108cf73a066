/** Acceptance: the ROI the UI shows is byte-identical to the CLI's
 * roi_percent for the identical exported scenario file, for the baseline
 * and three edited scenarios; and rapid edits never render a stale report.
 * Drives the real service and the real CLI.
 */

import { execFile, spawn, type ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync, writeFileSync } from 'node:fs';
import { createServer } from 'node:net';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { promisify } from 'node:util';

import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { getPath } from '../src/paths.js';
import { DraftStore } from '../src/store.js';
import type { ScenarioDoc } from '../src/types.js';

const execFileP = promisify(execFile);
const PYTHON = process.env.PYTHON ?? 'python3';

let server: ChildProcess;
let baseUrl: string;
let workDir: string;

async function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once('error', reject);
    probe.listen(0, '127.0.0.1', () => {
      const address = probe.address();
      if (address === null || typeof address === 'string') return reject(new Error('no port'));
      probe.close(() => resolve(address.port));
    });
  });
}

async function waitForHealth(url: string): Promise<void> {
  const deadline = Date.now() + 30_000;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${url}/healthz`);
      if (response.ok) return;
    } catch (error) {
      lastError = error;
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error(`service did not come up: ${lastError}`);
}

beforeAll(async () => {
  const port = await freePort();
  baseUrl = `http://127.0.0.1:${port}`;
  server = spawn(PYTHON, ['-m', 'roi_forge.cli', 'serve', '--port', String(port)], {
    stdio: 'ignore',
  });
  await waitForHealth(baseUrl);
  workDir = mkdtempSync(join(tmpdir(), 'roi-ui-'));
});

afterAll(() => {
  server?.kill();
  if (workDir) rmSync(workDir, { recursive: true, force: true });
});

async function cliRoiFor(doc: string, name: string): Promise<string> {
  const path = join(workDir, `${name}.json`);
  writeFileSync(path, doc, 'utf-8');
  const { stdout } = await execFileP(PYTHON, [
    '-m', 'roi_forge.cli', 'appraise', '--scenario', path, '--format', 'json',
  ]);
  return (JSON.parse(stdout) as { roi_percent: string }).roi_percent;
}

function halveDecimal(text: string): string {
  const dot = text.indexOf('.');
  const digits = dot === -1 ? 0 : text.length - dot - 1;
  const scaledValue = Number(text.replace('.', '').padEnd(dot === -1 ? text.length : text.length - 1, '0'));
  const halvedTimesTen = scaledValue * 5; // x/2 == x*5 shifted one digit
  const total = digits + 1;
  const body = String(halvedTimesTen).padStart(total + 1, '0');
  const whole = body.slice(0, -total);
  const frac = body.slice(-total).replace(/0+$/, '');
  return whole + (frac ? '.' + frac : '');
}

interface Variant {
  name: string;
  apply: (store: DraftStore) => void;
}

const VARIANTS: Variant[] = [
  { name: 'baseline', apply: () => undefined },
  { name: 'growth-zero', apply: (store) => store.edit('enrollment.growth', '0') },
  { name: 'escalation-zero', apply: (store) => store.edit('enrollment.fee.escalation', '0') },
  {
    name: 'savings-halved',
    apply: (store) => {
      const lines = store.doc!.operational_costs as { saving_fraction: string | number }[];
      lines.forEach((line, i) => {
        const current = String(line.saving_fraction);
        store.edit(`operational_costs[${i}].saving_fraction`, halveDecimal(current));
      });
    },
  },
];

describe('UI / CLI parity', () => {
  it('halveDecimal halves exactly', () => {
    expect(halveDecimal('0.75')).toBe('0.375');
    expect(halveDecimal('1')).toBe('0.5');
    expect(halveDecimal('0.5')).toBe('0.25');
  });

  for (const variant of VARIANTS) {
    it(`shows the CLI's roi_percent byte-for-byte: ${variant.name}`, async () => {
      const store = new DraftStore(new ApiClient(baseUrl));
      await store.loadBaseline();
      expect(store.roiShown).toBe('1850.13'); // fresh load shows the baseline badge
      variant.apply(store);
      await store.recomputeNow();
      const shown = store.roiShown;
      expect(shown).not.toBeNull();
      const cliRoi = await cliRoiFor(store.exportText(), variant.name);
      expect(shown).toBe(cliRoi);
      if (variant.name === 'growth-zero') {
        expect(Number(shown)).toBeLessThan(1850.13);
      }
    });
  }

  it('reverting an edit restores the baseline report', async () => {
    const store = new DraftStore(new ApiClient(baseUrl));
    await store.loadBaseline();
    store.edit('enrollment.growth', '0');
    await store.recomputeNow();
    expect(store.roiShown).not.toBe('1850.13');
    store.edit('enrollment.growth', '0.2');
    await store.recomputeNow();
    expect(store.roiShown).toBe('1850.13');
  });

  it('sweep results pass through the current baseline point monotonically', async () => {
    const api = new ApiClient(baseUrl);
    const store = new DraftStore(api);
    await store.loadBaseline();
    const report = await api.sweep(store.doc!, 'enrollment.growth', [
      '0', '0.05', '0.1', '0.15', '0.2', '0.25', '0.3',
    ]);
    const rois = report.results.map((row) => Number(row.roi_percent));
    for (let i = 1; i < rois.length; i++) expect(rois[i]).toBeGreaterThan(rois[i - 1]);
    const anchor = report.results.find((row) => row.value === '0.2');
    expect(anchor?.roi_percent).toBe('1850.13');
  });

  it('never renders a stale report under scripted rapid edits', async () => {
    const store = new DraftStore(new ApiClient(baseUrl));
    await store.loadBaseline();
    // fire three submissions back to back without awaiting
    store.edit('enrollment.growth', '0.05');
    const p1 = store.recomputeNow();
    store.edit('enrollment.growth', '0.1');
    const p2 = store.recomputeNow();
    store.edit('enrollment.growth', '0.15');
    const p3 = store.recomputeNow();
    await Promise.all([p1, p2, p3]);
    await new Promise((r) => setTimeout(r, 300)); // let any stragglers land
    const finalRoi = store.roiShown;
    const cliRoi = await cliRoiFor(store.exportText(), 'rapid-final');
    expect(finalRoi).toBe(cliRoi); // the displayed report is the last edit's
    const fresh = new DraftStore(new ApiClient(baseUrl));
    await fresh.loadBaseline();
    fresh.edit('enrollment.growth', '0.15');
    const settled = await fresh.recomputeNow();
    expect(finalRoi).toBe(settled!.roi_percent);
  });

  it('invalid edits surface 422 diagnostics at the field path', async () => {
    const store = new DraftStore(new ApiClient(baseUrl));
    await store.loadBaseline();
    store.edit('operational_costs[0].saving_fraction', '1.5');
    await store.recomputeNow();
    expect(store.fieldErrors.get('operational_costs[0].saving_fraction')).toMatch(/\[0, 1\]/);
    expect(store.roiShown).toBe('1850.13'); // last good report still shown
  });
});
