/** Shared shapes of the scenario document and the service responses. */

export type JsonValue = string | number | boolean | null | JsonValue[] | { [key: string]: JsonValue };

export interface ScenarioDoc {
  [key: string]: JsonValue;
}

export interface Diagnostic {
  severity: 'error' | 'warning';
  path: string;
  message: string;
}

export interface MoneyCell {
  exact: string;
  rounded: number;
}

export interface TableRow {
  name: string;
  exact: string[];
  rounded: number[];
  intake?: number[];
}

export interface YearTable {
  title: string;
  years: number[];
  rows: TableRow[];
  total: TableRow | null;
  compat_divisor_applied?: boolean;
}

export interface StatementRow {
  label: string;
  exact: string;
  rounded: number;
}

export interface MatrixCell {
  tangibility: string;
  measurability: string;
  items: { id: number; name: string }[];
}

export interface Report {
  schema_version: number;
  meta: { name: string; currency: string; description: string };
  horizon: number;
  investment: {
    staff: { lines: { role: string; headcount: number; hourly_wage: string; total: string }[]; total: string };
    hardware: string;
    network: string;
    support: string;
    total: string;
  };
  statement: Record<string, MoneyCell>;
  roi_percent: string;
  npv: number | null;
  payback_year: number | null;
  enrollment: {
    per_student_net: MoneyCell;
    intake: { program: string; count: number }[];
    intake_total: number;
  } | null;
  tables: {
    table9: YearTable;
    table10: YearTable;
    table11: YearTable;
    table15: YearTable;
    table18: YearTable;
    table19: { title: string; rows: StatementRow[] };
    matrix: { title: string; cells: MatrixCell[] };
  };
  diagnostics: Diagnostic[];
}

export interface SweepRow {
  value: string;
  roi_percent: string;
  net_cash_flow: MoneyCell;
  npv: number | null;
  payback_year: number | null;
}

export interface SweepReport {
  param: string;
  results: SweepRow[];
}
