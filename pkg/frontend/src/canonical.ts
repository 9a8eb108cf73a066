/** Stable scenario serialization: sorted keys, two-space indent, trailing
 * newline - the same canonical shape the service emits, so a downloaded file
 * diffs cleanly against server-emitted ones. */

import type { JsonValue } from './types.js';

function sortValue(value: JsonValue): JsonValue {
  if (Array.isArray(value)) return value.map(sortValue);
  if (value !== null && typeof value === 'object') {
    const sorted: { [key: string]: JsonValue } = {};
    for (const key of Object.keys(value).sort()) {
      sorted[key] = sortValue((value as { [key: string]: JsonValue })[key]);
    }
    return sorted;
  }
  return value;
}

export function canonicalText(doc: JsonValue): string {
  return JSON.stringify(sortValue(doc), null, 2) + '\n';
}

export function deepClone<T extends JsonValue>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}
