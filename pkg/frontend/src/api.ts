/** HTTP client for the appraisal service. The UI computes no finance itself:
 * every displayed number comes out of these calls. */

import type { Diagnostic, Report, ScenarioDoc, SweepReport } from './types.js';
import { canonicalText } from './canonical.js';

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
    public readonly diagnostics: Diagnostic[] = [],
  ) {
    super(message);
  }
}

export interface FetchLike {
  (input: string, init?: RequestInit): Promise<Response>;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async diagnosticsFrom(response: Response): Promise<Diagnostic[]> {
    try {
      const body = (await response.json()) as { diagnostics?: Diagnostic[] };
      return body.diagnostics ?? [];
    } catch {
      return [];
    }
  }

  async baseline(): Promise<ScenarioDoc> {
    const response = await this.fetchFn(`${this.baseUrl}/api/v1/baseline`);
    if (!response.ok) throw new ApiError(`baseline fetch failed (${response.status})`, response.status);
    return (await response.json()) as ScenarioDoc;
  }

  async appraise(doc: ScenarioDoc, signal?: AbortSignal): Promise<Report> {
    const response = await this.fetchFn(`${this.baseUrl}/api/v1/appraise`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: canonicalText(doc),
      signal,
    });
    if (response.status === 422) {
      throw new ApiError('scenario rejected', 422, await this.diagnosticsFrom(response));
    }
    if (!response.ok) throw new ApiError(`appraise failed (${response.status})`, response.status);
    return (await response.json()) as Report;
  }

  async sweep(doc: ScenarioDoc, param: string, values: string[]): Promise<SweepReport> {
    const response = await this.fetchFn(`${this.baseUrl}/api/v1/sweep`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ scenario: doc, param, values }),
    });
    if (response.status === 422) {
      throw new ApiError('sweep rejected', 422, await this.diagnosticsFrom(response));
    }
    if (!response.ok) throw new ApiError(`sweep failed (${response.status})`, response.status);
    return (await response.json()) as SweepReport;
  }
}
