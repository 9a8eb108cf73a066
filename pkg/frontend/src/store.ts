/** Scenario draft state: edits, debounced recompute, latest-wins responses.
 *
 * Every submission snapshots the draft, so in-flight requests are never
 * affected by later edits; a response renders only if no newer request has
 * been issued, so the view can never show a report older than the latest
 * acknowledged request. Superseded requests are aborted and discarded.
 */

import { ApiClient, ApiError } from './api.js';
import { canonicalText, deepClone } from './canonical.js';
import { getPath, setPath } from './paths.js';
import type { Diagnostic, JsonValue, Report, ScenarioDoc } from './types.js';

export const DEBOUNCE_MS = 250;

export interface DraftListener {
  (store: DraftStore): void;
}

export class DraftStore {
  doc: ScenarioDoc | null = null;
  report: Report | null = null;
  /** Error-level diagnostics from the last rejected submission, by field path. */
  fieldErrors = new Map<string, string>();
  banner: string | null = null;
  dirty = false;
  pending = false;

  private requestSeq = 0;
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private abort: AbortController | null = null;
  private listeners: DraftListener[] = [];

  constructor(private readonly api: ApiClient) {}

  subscribe(listener: DraftListener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this);
  }

  async loadBaseline(): Promise<void> {
    try {
      this.doc = (await this.api.baseline()) as ScenarioDoc;
      this.banner = null;
      this.dirty = false;
      this.notify();
      await this.recomputeNow();
    } catch (error) {
      // no stale numbers: clear the report and surface a retryable banner
      this.report = null;
      this.banner = error instanceof Error ? error.message : String(error);
      this.notify();
    }
  }

  get(path: string): JsonValue | undefined {
    return this.doc ? getPath(this.doc, path) : undefined;
  }

  /** Apply one edit and schedule a debounced recompute. */
  edit(path: string, value: JsonValue): void {
    if (!this.doc) throw new Error('no scenario loaded');
    setPath(this.doc, path, value);
    this.dirty = true;
    this.fieldErrors.delete(path);
    this.notify();
    this.scheduleRecompute();
  }

  scheduleRecompute(): void {
    if (this.debounceTimer !== null) clearTimeout(this.debounceTimer);
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      void this.recomputeNow();
    }, DEBOUNCE_MS);
  }

  /** Submit the current draft immediately; superseded responses are discarded. */
  async recomputeNow(): Promise<Report | null> {
    if (!this.doc) return null;
    if (this.debounceTimer !== null) {
      clearTimeout(this.debounceTimer);
      this.debounceTimer = null;
    }
    const mySeq = ++this.requestSeq;
    this.abort?.abort();
    const controller = new AbortController();
    this.abort = controller;
    const snapshot = deepClone(this.doc);
    this.pending = true;
    this.notify();
    try {
      const report = await this.api.appraise(snapshot, controller.signal);
      if (mySeq !== this.requestSeq) return null; // superseded while in flight
      this.report = report;
      this.fieldErrors.clear();
      this.banner = null;
      return report;
    } catch (error) {
      if (mySeq !== this.requestSeq) return null;
      if (error instanceof ApiError && error.status === 422) {
        this.fieldErrors = new Map(
          error.diagnostics
            .filter((d) => d.severity === 'error')
            .map((d): [string, string] => [d.path, d.message]),
        );
      } else if (!(error instanceof DOMException && error.name === 'AbortError')) {
        this.banner = error instanceof Error ? error.message : String(error);
      }
      return null;
    } finally {
      if (mySeq === this.requestSeq) {
        this.pending = false;
        this.notify();
      }
    }
  }

  /** Canonical scenario text for download; exact bytes the service accepts. */
  exportText(): string {
    if (!this.doc) throw new Error('no scenario loaded');
    return canonicalText(this.doc);
  }

  /** Replace the draft from an uploaded file and recompute through the service. */
  async importText(text: string): Promise<void> {
    let parsed: JsonValue;
    try {
      parsed = JSON.parse(text) as JsonValue;
    } catch (error) {
      throw new Error(`not a scenario file: ${error instanceof Error ? error.message : error}`);
    }
    if (parsed === null || typeof parsed !== 'object' || Array.isArray(parsed)) {
      throw new Error('not a scenario file: expected a JSON object');
    }
    this.doc = parsed as ScenarioDoc;
    this.dirty = false;
    this.notify();
    await this.recomputeNow();
  }

  get roiShown(): string | null {
    return this.report ? this.report.roi_percent : null;
  }

  get warnings(): Diagnostic[] {
    return this.report ? this.report.diagnostics.filter((d) => d.severity === 'warning') : [];
  }
}
