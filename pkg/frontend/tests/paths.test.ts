import { describe, expect, it } from 'vitest';

import { decimalRange, getPath, isDecimalLiteral, parsePath, setPath } from '../src/paths.js';
import type { ScenarioDoc } from '../src/types.js';

describe('parsePath', () => {
  it('splits dotted and indexed segments', () => {
    expect(parsePath('enrollment.fee.overhead_fraction')).toEqual([
      'enrollment',
      'fee',
      'overhead_fraction',
    ]);
    expect(parsePath('operational_costs[2].saving_fraction')).toEqual([
      'operational_costs',
      2,
      'saving_fraction',
    ]);
  });

  it('rejects malformed paths', () => {
    expect(() => parsePath('a[x]')).toThrow();
    expect(() => parsePath('a[1')).toThrow();
    expect(() => parsePath('')).toThrow();
  });
});

describe('get/set path', () => {
  const doc = (): ScenarioDoc => ({
    horizon: 5,
    enrollment: { growth: '0.2', fee: { escalation: '0.05' } },
    operational_costs: [{ name: 'a', saving_fraction: '0.75' }],
  });

  it('reads nested values', () => {
    expect(getPath(doc(), 'enrollment.growth')).toBe('0.2');
    expect(getPath(doc(), 'operational_costs[0].saving_fraction')).toBe('0.75');
    expect(getPath(doc(), 'no.such.path')).toBeUndefined();
  });

  it('writes nested values', () => {
    const d = doc();
    setPath(d, 'enrollment.fee.escalation', '0');
    setPath(d, 'operational_costs[0].saving_fraction', '0.375');
    expect(getPath(d, 'enrollment.fee.escalation')).toBe('0');
    expect(getPath(d, 'operational_costs[0].saving_fraction')).toBe('0.375');
  });

  it('refuses to invent structure', () => {
    expect(() => setPath(doc(), 'missing.key', '1')).toThrow();
    expect(() => setPath(doc(), 'operational_costs[9].saving_fraction', '1')).toThrow();
  });
});

describe('decimal helpers', () => {
  it('recognises plain decimals only', () => {
    for (const good of ['0', '0.2', '-1.5', '30150000', '.5']) {
      expect(isDecimalLiteral(good)).toBe(true);
    }
    for (const bad of ['1e6', 'abc', '1.2.3', '']) {
      expect(isDecimalLiteral(bad)).toBe(false);
    }
  });

  it('steps ranges without float drift', () => {
    expect(decimalRange('0', '0.3', '0.05')).toEqual(['0', '0.05', '0.1', '0.15', '0.2', '0.25', '0.3']);
    expect(decimalRange('0.1', '0.1', '0.1')).toEqual(['0.1']);
    expect(() => decimalRange('0', '1', '0')).toThrow();
  });
});
