/** Dotted/indexed paths into the scenario document.
 *
 * Same grammar the service uses in sweep parameters and diagnostic paths:
 * "enrollment.fee.overhead_fraction", "operational_costs[2].saving_fraction".
 */

import type { JsonValue, ScenarioDoc } from './types.js';

export type PathStep = string | number;

export function parsePath(path: string): PathStep[] {
  const steps: PathStep[] = [];
  for (const part of path.split('.')) {
    const bracket = part.indexOf('[');
    const name = bracket === -1 ? part : part.slice(0, bracket);
    if (name) steps.push(name);
    let rest = bracket === -1 ? '' : part.slice(bracket);
    while (rest.startsWith('[')) {
      const close = rest.indexOf(']');
      if (close === -1) throw new Error(`bad path: ${path}`);
      const index = rest.slice(1, close);
      if (!/^\d+$/.test(index)) throw new Error(`bad path: ${path}`);
      steps.push(Number(index));
      rest = rest.slice(close + 1);
    }
  }
  if (steps.length === 0) throw new Error(`bad path: ${path}`);
  return steps;
}

export function getPath(doc: ScenarioDoc, path: string): JsonValue | undefined {
  let node: JsonValue | undefined = doc;
  for (const step of parsePath(path)) {
    if (typeof step === 'number') {
      if (!Array.isArray(node) || step >= node.length) return undefined;
      node = node[step];
    } else {
      if (node === null || typeof node !== 'object' || Array.isArray(node)) return undefined;
      node = (node as ScenarioDoc)[step];
    }
  }
  return node;
}

export function setPath(doc: ScenarioDoc, path: string, value: JsonValue): void {
  const steps = parsePath(path);
  let node: JsonValue = doc;
  for (const step of steps.slice(0, -1)) {
    let next: JsonValue | undefined;
    if (typeof step === 'number') {
      if (!Array.isArray(node)) throw new Error(`path ${path} does not resolve`);
      next = node[step];
    } else {
      if (node === null || typeof node !== 'object' || Array.isArray(node)) {
        throw new Error(`path ${path} does not resolve`);
      }
      next = (node as ScenarioDoc)[step];
    }
    if (next === undefined) throw new Error(`path ${path} does not resolve`);
    node = next;
  }
  const last = steps[steps.length - 1];
  if (typeof last === 'number') {
    if (!Array.isArray(node) || last >= node.length) throw new Error(`path ${path} does not resolve`);
    node[last] = value;
  } else {
    if (node === null || typeof node !== 'object' || Array.isArray(node)) {
      throw new Error(`path ${path} does not resolve`);
    }
    (node as ScenarioDoc)[last] = value;
  }
}

/** Decimal literal check mirroring the service: plain digits, one optional dot. */
export function isDecimalLiteral(text: string): boolean {
  return /^[+-]?(\d+(\.\d*)?|\.\d+)$/.test(text.trim());
}

function fractionDigits(text: string): number {
  const dot = text.indexOf('.');
  return dot === -1 ? 0 : text.length - dot - 1;
}

function scaled(text: string, digits: number): number {
  const negative = text.startsWith('-');
  const body = text.replace(/^[+-]/, '');
  const [whole, frac = ''] = body.split('.');
  const padded = frac.padEnd(digits, '0');
  const value = Number((whole || '0') + padded);
  return negative ? -value : value;
}

function unscaled(value: number, digits: number): string {
  if (digits === 0) return String(value);
  const sign = value < 0 ? '-' : '';
  const body = Math.abs(value).toString().padStart(digits + 1, '0');
  const whole = body.slice(0, -digits);
  const frac = body.slice(-digits).replace(/0+$/, '');
  return sign + whole + (frac ? '.' + frac : '');
}

/** Inclusive decimal range with exact scaled-integer stepping (no float drift). */
export function decimalRange(from: string, to: string, step: string): string[] {
  if (![from, to, step].every(isDecimalLiteral)) throw new Error('range bounds must be decimals');
  const digits = Math.max(fractionDigits(from), fractionDigits(to), fractionDigits(step));
  const start = scaled(from, digits);
  const stop = scaled(to, digits);
  const increment = scaled(step, digits);
  if (increment <= 0) throw new Error('step must be positive');
  const values: string[] = [];
  for (let v = start; v <= stop; v += increment) values.push(unscaled(v, digits));
  return values;
}
