/** DOM wiring for the what-if explorer. All finance numbers come from the
 * service report; this file only renders state and forwards edits. */

import { ApiClient, ApiError } from './api.js';
import { renderSweepChart } from './chart.js';
import { group, percentLabel } from './format.js';
import { decimalRange, isDecimalLiteral } from './paths.js';
import { DraftStore } from './store.js';
import type { Report, StatementRow, YearTable } from './types.js';

const api = new ApiClient('');
const store = new DraftStore(api);

const $ = <T extends HTMLElement>(selector: string): T => {
  const el = document.querySelector<T>(selector);
  if (!el) throw new Error(`missing element ${selector}`);
  return el;
};

function escapeHtml(value: unknown): string {
  return String(value ?? '')
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/* ------------------------------- form ---------------------------------- */

interface FieldSpec {
  path: string;
  label: string;
  integer?: boolean;
}

const ASSUMPTION_FIELDS: FieldSpec[] = [
  { path: 'horizon', label: 'Horizon (years)', integer: true },
  { path: 'enrollment.growth', label: 'Enrollment growth' },
  { path: 'enrollment.fee.escalation', label: 'Fee escalation' },
  { path: 'enrollment.fee.overhead_fraction', label: 'Overhead fraction' },
  { path: 'productivity.growth', label: 'Productivity growth' },
  { path: 'options.tax_rate', label: 'Tax rate' },
];

function fieldHtml(spec: FieldSpec, value: unknown): string {
  return `
    <label class="field" data-field="${escapeHtml(spec.path)}">
      <span class="name">${escapeHtml(spec.label)}</span>
      <input data-path="${escapeHtml(spec.path)}" ${spec.integer ? 'data-integer="1"' : ''}
             value="${escapeHtml(value)}" autocomplete="off" spellcheck="false">
      <span class="err" hidden></span>
    </label>`;
}

function dynamicFields(): FieldSpec[] {
  const fields: FieldSpec[] = [];
  const doc = store.doc;
  if (!doc) return fields;
  const operational = (doc.operational_costs as { name: string }[] | undefined) ?? [];
  operational.forEach((line, i) => {
    fields.push({ path: `operational_costs[${i}].saving_fraction`, label: `${line.name}: saving fraction` });
    fields.push({ path: `operational_costs[${i}].annual_ratio`, label: `${line.name}: annual ratio` });
  });
  const running = (doc.running_costs as { name: string }[] | undefined) ?? [];
  running.forEach((line, i) => {
    fields.push({ path: `running_costs[${i}].annual_ratio`, label: `${line.name}: annual ratio` });
  });
  const enrollment = doc.enrollment as { schedule?: { age: number }[] } | null;
  (enrollment?.schedule ?? []).forEach((entry, i) => {
    fields.push({ path: `enrollment.schedule[${i}].semesters`, label: `Schedule age ${entry.age}: semesters`, integer: true });
    fields.push({ path: `enrollment.schedule[${i}].multiplier`, label: `Schedule age ${entry.age}: multiplier` });
  });
  return fields;
}

function renderForm(): void {
  if (!store.doc) return;
  $('#assumptions').innerHTML = ASSUMPTION_FIELDS.map((f) => fieldHtml(f, store.get(f.path))).join('');
  $('#lines').innerHTML = dynamicFields().map((f) => fieldHtml(f, store.get(f.path))).join('');
  document.querySelectorAll<HTMLInputElement>('input[data-path]').forEach((input) => {
    input.addEventListener('input', () => onFieldInput(input));
  });
}

function onFieldInput(input: HTMLInputElement): void {
  const path = input.dataset.path!;
  const raw = input.value.trim();
  const errEl = input.parentElement!.querySelector<HTMLElement>('.err')!;
  if (!isDecimalLiteral(raw)) {
    errEl.textContent = 'not a decimal value';
    errEl.hidden = false;
    return;
  }
  errEl.hidden = true;
  store.edit(path, input.dataset.integer ? Number(raw) : raw);
}

function renderFieldErrors(): void {
  document.querySelectorAll<HTMLElement>('label.field').forEach((label) => {
    const path = label.dataset.field!;
    const errEl = label.querySelector<HTMLElement>('.err')!;
    const message = store.fieldErrors.get(path);
    if (message) {
      errEl.textContent = message;
      errEl.hidden = false;
    } else if (errEl.textContent !== 'not a decimal value' || errEl.hidden) {
      errEl.hidden = true;
    }
  });
  const unanchored = [...store.fieldErrors.entries()].filter(
    ([path]) => !document.querySelector(`label.field[data-field="${CSS.escape(path)}"]`),
  );
  const list = $('#other-errors');
  list.innerHTML = unanchored
    .map(([path, message]) => `<li><code>${escapeHtml(path)}</code>: ${escapeHtml(message)}</li>`)
    .join('');
}

/* ------------------------------ report --------------------------------- */

function yearTableHtml(name: string, table: YearTable): string {
  const head = [name === 'table15' ? 'Program Studi' : 'Line', ...table.years.map((y) => `Tahun ke-${y}`)];
  const rows = [...table.rows, ...(table.total ? [table.total] : [])];
  const body = rows
    .map((row) => {
      const cells = row.rounded
        .map((v, i) => `<td title="${escapeHtml(row.exact[i])}">${group(v)}</td>`)
        .join('');
      return `<tr><th>${escapeHtml(row.name)}${row.intake ? ` <small>(${row.intake.join(', ')})</small>` : ''}</th>${cells}</tr>`;
    })
    .join('');
  return `
    <details open>
      <summary>${escapeHtml(name)}: ${escapeHtml(table.title)}${table.compat_divisor_applied ? ' (÷3 view)' : ''}</summary>
      <table><thead><tr>${head.map((h) => `<th>${escapeHtml(h)}</th>`).join('')}</tr></thead>
      <tbody>${body}</tbody></table>
    </details>`;
}

function statementHtml(rows: StatementRow[]): string {
  const body = rows
    .map(
      (row) =>
        `<tr><th>${escapeHtml(row.label)}</th><td title="${escapeHtml(row.exact)}">${group(row.rounded)}</td></tr>`,
    )
    .join('');
  return `<table class="statement"><tbody>${body}</tbody></table>`;
}

function renderReport(report: Report | null): void {
  $('#roi-badge').textContent = percentLabel(store.roiShown);
  const summary = $('#summary');
  const tables = $('#tables');
  if (!report) {
    summary.innerHTML = '';
    tables.innerHTML = '';
    return;
  }
  summary.innerHTML = `
    <span>Investment <b title="exact">${group(Number(report.investment.total))}</b></span>
    <span>NPV <b>${report.npv === null ? '—' : group(report.npv)}</b></span>
    <span>Payback <b>${report.payback_year === null ? 'never' : `year ${report.payback_year}`}</b></span>
    <span>Intake <b>${report.enrollment ? report.enrollment.intake_total : 0}</b></span>`;
  const matrix = report.tables.matrix;
  const cell = (t: string, m: string) =>
    matrix.cells
      .find((c) => c.tangibility === t && c.measurability === m)!
      .items.map((i) => `${i.id}. ${escapeHtml(i.name)}`)
      .join('<br>') || '—';
  tables.innerHTML = [
    `<details open><summary>table19: ${escapeHtml(report.tables.table19.title)}</summary>${statementHtml(report.tables.table19.rows)}</details>`,
    yearTableHtml('table9', report.tables.table9),
    yearTableHtml('table10', report.tables.table10),
    yearTableHtml('table11', report.tables.table11),
    yearTableHtml('table15', report.tables.table15),
    yearTableHtml('table18', report.tables.table18),
    `<details><summary>matrix: ${escapeHtml(matrix.title)}</summary>
      <table><thead><tr><th></th><th>Measurable</th><th>Immeasurable</th></tr></thead><tbody>
      <tr><th>Tangible</th><td>${cell('tangible', 'measurable')}</td><td>${cell('tangible', 'immeasurable')}</td></tr>
      <tr><th>Intangible</th><td>${cell('intangible', 'measurable')}</td><td>${cell('intangible', 'immeasurable')}</td></tr>
      </tbody></table></details>`,
  ].join('');
  $('#warnings').innerHTML = store.warnings
    .map((d) => `<li><code>${escapeHtml(d.path)}</code> ${escapeHtml(d.message)}</li>`)
    .join('');
}

/* ------------------------------- sweep ---------------------------------- */

async function runSweep(): Promise<void> {
  if (!store.doc) return;
  const param = ($('#sweep-param') as HTMLInputElement).value.trim();
  const from = ($('#sweep-from') as HTMLInputElement).value.trim();
  const to = ($('#sweep-to') as HTMLInputElement).value.trim();
  const step = ($('#sweep-step') as HTMLInputElement).value.trim();
  const toast = $('#sweep-error');
  toast.textContent = '';
  let values: string[];
  try {
    values = decimalRange(from, to, step);
  } catch (error) {
    toast.textContent = error instanceof Error ? error.message : String(error);
    return;
  }
  if (values.length === 0) {
    toast.textContent = 'empty range';
    return;
  }
  try {
    const report = await api.sweep(store.doc, param, values);
    const current = store.get(param);
    $('#sweep-chart').innerHTML = renderSweepChart(report, current === undefined ? null : String(current));
  } catch (error) {
    toast.textContent =
      error instanceof ApiError && error.diagnostics.length
        ? error.diagnostics.map((d) => `${d.path}: ${d.message}`).join('; ')
        : String(error);
  }
}

/* ----------------------------- save / load ------------------------------ */

function download(): void {
  const blob = new Blob([store.exportText()], { type: 'application/json' });
  const url = URL.createObjectURL(blob);
  const a = document.createElement('a');
  a.href = url;
  a.download = 'scenario.json';
  a.click();
  URL.revokeObjectURL(url);
  store.dirty = false;
}

async function upload(file: File): Promise<void> {
  const panel = $('#upload-error');
  panel.textContent = '';
  try {
    await store.importText(await file.text());
    renderForm();
  } catch (error) {
    panel.textContent = error instanceof Error ? error.message : String(error);
  }
}

/* ------------------------------- boot ----------------------------------- */

store.subscribe(() => {
  $('#banner').toggleAttribute('hidden', store.banner === null);
  $('#banner-message').textContent = store.banner ?? '';
  $('#pending').toggleAttribute('hidden', !store.pending);
  renderReport(store.report);
  renderFieldErrors();
});

window.addEventListener('beforeunload', (event) => {
  if (store.dirty) {
    event.preventDefault();
    event.returnValue = '';
  }
});

$('#recompute').addEventListener('click', () => void store.recomputeNow());
$('#retry').addEventListener('click', () => void store.loadBaseline());
$('#download').addEventListener('click', download);
$('#upload').addEventListener('change', (event) => {
  const input = event.target as HTMLInputElement;
  if (input.files?.[0]) void upload(input.files[0]);
  input.value = '';
});
$('#sweep-run').addEventListener('click', () => void runSweep());

void store.loadBaseline().then(() => renderForm());
