import { ApiClient } from './api.js';
import { formatNumber, formatPercent, percentileColor } from './color.js';
import { LatestWins } from './debounce.js';
import type { FamilyBand, Meta, PanelResponse } from './types.js';

/** Programs-by-years percentile grid, rows pre-sorted by the service on mean
 * percentile. The family filter collapses rows into per-family mean/min/max
 * bands, all taken verbatim from the panel payload. */
export class PercentileHeatmap {
  private readonly latest = new LatestWins();
  private readonly gridHost: HTMLElement;
  private readonly familySelect: HTMLSelectElement;
  private lastPanel: PanelResponse | null = null;

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
    meta: Meta,
  ) {
    root.innerHTML = '';
    const controls = document.createElement('div');
    controls.className = 'controls';
    const label = document.createElement('label');
    label.textContent = 'rows ';
    this.familySelect = document.createElement('select');
    this.familySelect.dataset.testid = 'family-filter';
    const programs = document.createElement('option');
    programs.value = 'programs';
    programs.textContent = 'programs';
    this.familySelect.appendChild(programs);
    if (meta.families.length) {
      const families = document.createElement('option');
      families.value = 'families';
      families.textContent = 'family bands';
      this.familySelect.appendChild(families);
    }
    this.familySelect.addEventListener('change', () => this.render());
    label.appendChild(this.familySelect);
    controls.appendChild(label);
    root.appendChild(controls);

    this.gridHost = document.createElement('div');
    this.gridHost.dataset.testid = 'heatmap-grid';
    root.appendChild(this.gridHost);
  }

  async updateWeights(weights: number[]): Promise<void> {
    const panel = await this.latest.run((signal) => this.api.panel(weights, signal)).catch(() => null);
    if (panel === null) return;
    this.lastPanel = panel;
    this.render();
  }

  private render(): void {
    const panel = this.lastPanel;
    this.gridHost.innerHTML = '';
    if (!panel) return;
    const table = document.createElement('table');
    table.className = 'heatmap';
    const head = document.createElement('tr');
    head.appendChild(cell('th', this.familySelect.value === 'families' ? 'family' : 'program'));
    for (const year of panel.years) head.appendChild(cell('th', String(year)));
    head.appendChild(cell('th', 'mean'));
    table.appendChild(head);

    if (this.familySelect.value === 'families') {
      this.renderFamilyRows(table, panel);
    } else {
      this.renderProgramRows(table, panel);
    }
    this.gridHost.appendChild(table);
  }

  private renderProgramRows(table: HTMLTableElement, panel: PanelResponse): void {
    for (const program of panel.programs) {
      const tr = document.createElement('tr');
      tr.dataset.row = program.id;
      const name = cell('td', program.family ? `${program.id} · ${program.family}` : program.id);
      tr.appendChild(name);
      for (const year of panel.years) {
        const pct = program.percentiles[String(year)];
        const td = cell('td', pct === undefined ? '' : formatPercent(pct, 0));
        if (pct !== undefined) td.style.background = percentileColor(pct);
        tr.appendChild(td);
      }
      const mean = cell('td', formatNumber(program.mean_percentile, 3));
      mean.className = 'mean';
      tr.appendChild(mean);
      table.appendChild(tr);
    }
  }

  private renderFamilyRows(table: HTMLTableElement, panel: PanelResponse): void {
    const byFamily = new Map<string, Map<number, FamilyBand>>();
    for (const band of panel.families) {
      if (!byFamily.has(band.family)) byFamily.set(band.family, new Map());
      byFamily.get(band.family)!.set(band.year, band);
    }
    for (const [family, years] of byFamily) {
      const tr = document.createElement('tr');
      tr.dataset.row = family;
      tr.appendChild(cell('td', family));
      for (const year of panel.years) {
        const band = years.get(year);
        if (!band) {
          tr.appendChild(cell('td', ''));
          continue;
        }
        const td = cell(
          'td',
          band.count === 1
            ? formatPercent(band.mean, 0)
            : `${formatPercent(band.mean, 0)} [${formatPercent(band.min, 0)}–${formatPercent(band.max, 0)}]`,
        );
        td.style.background = percentileColor(band.mean);
        td.title = `${band.count} programs`;
        tr.appendChild(td);
      }
      tr.appendChild(cell('td', ''));
      table.appendChild(tr);
    }
  }

  displayedRowOrder(): string[] {
    return Array.from(this.gridHost.querySelectorAll('tr[data-row]')).map(
      (tr) => (tr as HTMLElement).dataset.row ?? '',
    );
  }
}

function cell(tag: 'td' | 'th', text: string): HTMLTableCellElement {
  const node = document.createElement(tag) as HTMLTableCellElement;
  node.textContent = text;
  return node;
}
